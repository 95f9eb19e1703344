//! Named verification suites, each sweeping one family of invariants up to a
//! maximum order `s`. Used by the `verify` command.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{binom, factorial, rat, LaurentPoly, Rational};
use crate::forms::adjointness_report;
use crate::hankel::{
    apply_b, b_as_tensor, build_ds, build_ls, build_ms, build_ns, coeffs_a, matrix_window,
    pascal_lower, pascal_upper, solve_for_a,
};
use crate::identities::{
    equivariance_expansion_a, equivariance_expansion_b, identity_a_grid, identity_b_grid, BForm,
};
use crate::sections::{
    act_sl2, bracket_constants, lie_half, proj_plus, HalfWeight, Section, Sl2Generator,
};
use crate::sym_tensor::{build_v, compute_cs, project_ps, section_sigma, sym_act, SymTensor};
use crate::tensor_rep::{
    apply_tensor, cartan_eigenvalue, is_lowest_weight, lowest_weight, oj_tensor,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Algebra,
    Sections,
    CrossSection,
    LowestWeight,
    ClosedForm,
    Hankel,
    Identities,
    Adjoint,
    Normalization,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Algebra,
        Suite::Sections,
        Suite::CrossSection,
        Suite::LowestWeight,
        Suite::ClosedForm,
        Suite::Hankel,
        Suite::Identities,
        Suite::Adjoint,
        Suite::Normalization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Sections => "sections",
            Suite::CrossSection => "cross-section",
            Suite::LowestWeight => "lowest-weight",
            Suite::ClosedForm => "closed-form",
            Suite::Hankel => "hankel",
            Suite::Identities => "identities",
            Suite::Adjoint => "adjoint",
            Suite::Normalization => "normalization",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Outcome of one suite: how many checks ran, which failed, and any
/// measured constants worth recording.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub measured: Vec<(String, String)>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Self::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn check_result<T>(&mut self, r: crate::Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn record(&mut self, key: impl Into<String>, value: impl ToString) {
        self.measured.push((key.into(), value.to_string()));
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(suite: Suite, max_s: u32) -> SuiteReport {
    let mut r = SuiteReport::new(suite.name());
    match suite {
        Suite::Algebra => algebra(&mut r, max_s),
        Suite::Sections => sections(&mut r, max_s),
        Suite::CrossSection => cross_section(&mut r, max_s),
        Suite::LowestWeight => lowest(&mut r, max_s),
        Suite::ClosedForm => closed_form(&mut r, max_s),
        Suite::Hankel => hankel(&mut r, max_s),
        Suite::Identities => identities(&mut r, max_s),
        Suite::Adjoint => adjoint(&mut r, max_s),
        Suite::Normalization => normalization(&mut r, max_s),
    }
    r
}

fn algebra(r: &mut SuiteReport, max_s: u32) {
    let n_max = 8 * max_s as i64 + 8;
    for n in 0..=n_max {
        for k in 0..=n {
            let direct = binom(n, k).unwrap();
            let ratio = Rational::new(
                factorial(n as u64),
                factorial(k as u64) * factorial((n - k) as u64),
            );
            r.check(direct == ratio, || format!("C({n},{k}) factorial ratio"));
            if n > 0 {
                let pascal = binom(n - 1, k - 1).unwrap() + binom(n - 1, k).unwrap();
                r.check(direct == pascal, || format!("Pascal rule at ({n},{k})"));
            }
        }
    }
    let p = LaurentPoly::from_ints((-8..=8).map(|e| (e, e * e - 3)));
    for j in 0..4 {
        for k in 0..4 {
            r.check(p.derive(j + k) == p.derive(j).derive(k), || {
                format!("derivative composition ({j},{k})")
            });
        }
    }
}

fn sections(r: &mut SuiteReport, max_s: u32) {
    use Sl2Generator::*;
    for twice_m in -2 * max_s as i64..=2 * max_s as i64 {
        let w = HalfWeight::from_twice(twice_m);
        match bracket_constants(w) {
            Some(c) => {
                let ok = c == [rat(2), rat(-2), rat(1)];
                r.check(ok, || format!("bracket constants at 2m = {twice_m}: {c:?}"));
            }
            None => r.check(false, || format!("no bracket constants at 2m = {twice_m}")),
        }
    }
    r.record("[E,A+]/A+", 2);
    r.record("[E,A-]/A-", -2);
    r.record("[A+,A-]/E", 1);
    for s in 1..=max_s {
        let w = HalfWeight::symbol(s);
        for p in 0..=(2 * s as i64 + 4) {
            let got = act_sl2(Raise, &Section::new(w, LaurentPoly::z(p)));
            let expected = LaurentPoly::monomial(p + 1, rat(p - 2 * s as i64));
            r.check(got.coeff == expected, || format!("A+ z^{p} at weight -{s}"));
        }
    }
    let u = Section::half(LaurentPoly::from_ints((-6..=6).map(|e| (e, e + 7))));
    let pp = proj_plus(&u).unwrap();
    r.check(proj_plus(&pp).unwrap() == pp, || "P+ idempotent".into());
    let pm = crate::sections::proj_minus(&u).unwrap();
    r.check(proj_plus(&pm).unwrap().is_zero(), || "P+ P- = 0".into());
}

fn cross_section(r: &mut SuiteReport, max_s: u32) {
    for s in 1..=max_s {
        let Some(cs) = r.check_result(compute_cs(s), "compute_cs") else {
            continue;
        };
        r.check(
            cs == Rational::from_integer(factorial(2 * s as u64)),
            || format!("C_{s} = (2s)!"),
        );
        let Some(v) = r.check_result(build_v(s), "build_v") else {
            continue;
        };
        let lowered = sym_act(Sl2Generator::Lower, &v);
        r.check(lowered == SymTensor::power(2, s).scale(&cs), || {
            format!("lowering v_(2s+1) at s = {s}")
        });
        for (key, _) in v.terms() {
            let ok = key.iter().sum::<u32>() == 2 * s + 1
                && (3..=2 * s + 1).contains(&key[0])
                && key[1..].iter().all(|&q| q <= 2);
            r.check(ok, || format!("key shape {key:?} at s = {s}"));
        }
        if s <= 4 {
            for p in 0..=(2 * s + 4) {
                let Some(sigma) = r.check_result(section_sigma(s, p), "section_sigma") else {
                    continue;
                };
                let proj = project_ps(&sigma);
                r.check(proj == Section::symbol(s, LaurentPoly::z(p as i64)), || {
                    format!("P_s sigma(z^{p}) at s = {s}")
                });
                if p > 2 * s {
                    let next = section_sigma(s, p + 1).unwrap();
                    let raised = sym_act(Sl2Generator::Raise, &sigma);
                    r.check(raised == next.scale(&rat(p as i64 - 2 * s as i64)), || {
                        format!("raising chain at s = {s}, p = {p}")
                    });
                }
            }
        }
    }
    r.record(
        "C_2",
        compute_cs(2).map(|c| c.to_string()).unwrap_or_default(),
    );
}

fn lowest(r: &mut SuiteReport, max_s: u32) {
    for s in 0..=(10 * max_s) {
        let l = lowest_weight(s);
        r.check(is_lowest_weight(&l), || format!("A- l_{s} = 0"));
        r.check(
            cartan_eigenvalue(&l) == Some(rat(2 * (s as i64 + 1))),
            || format!("E l_{s} = 2(s+1) l_{s}"),
        );
    }
}

fn closed_form(r: &mut SuiteReport, max_s: u32) {
    for s in 0..=max_s {
        for j in 0..=s {
            for k in (s + 1)..=(2 * s + 8) {
                let Some(t) = r.check_result(oj_tensor(s, j, k), "oj_tensor") else {
                    continue;
                };
                for n in 1..=(k - s) {
                    let f = Section::basis(-(n as i64));
                    let got = apply_tensor(&t, &f).unwrap();
                    let x = LaurentPoly::z(k as i64).derive(s - j);
                    let direct = proj_plus(&Section::half(&x * &f.coeff.derive(j))).unwrap();
                    r.check(got == direct, || {
                        format!("O_j closed form s={s} j={j} k={k} n={n}")
                    });
                }
            }
        }
    }
}

fn hankel(r: &mut SuiteReport, max_s: u32) {
    use Sl2Generator::*;
    for s in 0..=(2 * max_s) {
        let b = b_as_tensor(s, &LaurentPoly::z(2 * s as i64 + 1)).unwrap();
        r.check(b == lowest_weight(s), || {
            format!("P+ L_s(z^(2s+1)) = l_s at s = {s}")
        });
    }
    for s in 0..=(6 * max_s).min(40) {
        let ns = build_ns(s);
        r.check(build_ms(s) == &ns * &build_ds(s), || {
            format!("M_s = N_s D_s at s = {s}")
        });
        r.check(ns == &pascal_lower(s) * &pascal_upper(s), || {
            format!("N_s = L_s U_s at s = {s}")
        });
        let solved = solve_for_a(s);
        r.check(solved.as_ref().ok() == Some(&coeffs_a(s)), || {
            format!("solve_for_a = coeffs_a at s = {s}")
        });
    }
    for s in 0..=max_s.min(4) {
        for k in 0..=(2 * s + 8) {
            let x = LaurentPoly::z(k as i64);
            let t = b_as_tensor(s, &x).unwrap();
            for n in 1..=(k.max(2 * s + 4)) {
                let f = Section::basis(-(n as i64));
                let via_op = apply_b(s, &x, &f).unwrap();
                r.check(via_op == apply_tensor(&t, &f).unwrap(), || {
                    format!("operator/tensor agreement s={s} k={k} n={n}")
                });
                if k <= 2 * s {
                    r.check(via_op.is_zero(), || format!("kernel s={s} k={k} n={n}"));
                }
            }
            if k > 2 * s {
                let sym = Section::symbol(s, x.clone());
                for g in Sl2Generator::ALL {
                    let lhs = b_as_tensor(s, &act_sl2(g, &sym).coeff).unwrap();
                    let rhs = crate::tensor_rep::tensor_act(g, &t);
                    r.check(lhs == rhs, || format!("equivariance {g} s={s} k={k}"));
                }
            }
        }
    }
    let w = matrix_window(
        0,
        &LaurentPoly::from_ints((1..=9).map(|e| (e, 2 * e - 5))),
        6,
        6,
    )
    .unwrap();
    r.check(w.is_antidiagonal_constant(), || {
        "s = 0 window is Hankel".into()
    });
    let _ = (Lower, Raise, Cartan);
}

fn identities(r: &mut SuiteReport, max_s: u32) {
    let max_s = max_s.max(1) as i64;
    for res in identity_a_grid(max_s, 12).unwrap() {
        r.check(res.equal, || format!("identity A at {:?}", res.params));
    }
    let printed = identity_b_grid(max_s, 12, BForm::Printed).unwrap();
    let printed_fail = printed.iter().filter(|x| !x.equal).count();
    for res in &printed {
        r.check(res.equal, || {
            format!("identity B (printed form) at {:?}", res.params)
        });
    }
    let corrected = identity_b_grid(max_s, 12, BForm::Corrected).unwrap();
    let corrected_fail = corrected.iter().filter(|x| !x.equal).count();
    r.checks += corrected.len();
    r.record(
        "identity B printed form failures",
        format!("{printed_fail}/{}", printed.len()),
    );
    r.record(
        "identity B corrected form failures",
        format!("{corrected_fail}/{}", corrected.len()),
    );
    if corrected_fail > 0 {
        r.failures.push(format!(
            "identity B corrected form failed {corrected_fail} times"
        ));
    }
    for s in 1..=(max_s as u32).min(4) {
        for k in (2 * s + 1)..=(2 * s + 6) {
            r.check(equivariance_expansion_a(s, k).unwrap_or(false), || {
                format!("operator expansion of identity A at s={s} k={k}")
            });
        }
        for i in 0..=6 {
            for j in 0..=6 {
                if i + j >= s {
                    let ok = equivariance_expansion_b(s, i, j, BForm::Corrected).unwrap_or(false);
                    r.check(ok, || {
                        format!("operator expansion of identity B at s={s} i={i} j={j}")
                    });
                }
            }
        }
    }
}

fn adjoint(r: &mut SuiteReport, max_s: u32) {
    for s in 0..=max_s.min(5) {
        let Some(rep) = r.check_result(adjointness_report(s, 2 * s + 9), "adjointness_report")
        else {
            continue;
        };
        r.check(rep.is_proportional(), || {
            format!("K~ proportional to K at s = {s}")
        });
        if s == 0 {
            r.check(rep.lambda == Some(rat(1)), || "lambda_0 = 1".into());
        }
        let lambda = rep
            .lambda
            .map(|l| l.to_string())
            .unwrap_or_else(|| "undefined".into());
        r.record(
            format!("lambda_{s}"),
            format!("{lambda} ({})", rep.pairing.name()),
        );
    }
}

fn normalization(r: &mut SuiteReport, max_s: u32) {
    let _ = max_s;
    for k in 0..=12i64 {
        let x = LaurentPoly::z(k);
        let vf = Section::new(HalfWeight::VECTOR_FIELD, x.clone());
        let op = build_ls(1, &x).unwrap();
        for n in 1..=8i64 {
            let f = LaurentPoly::z(-n);
            let via_operator = proj_plus(&Section::half(op.apply(&f))).unwrap();
            let lie = lie_half(&vf, &Section::half(f)).unwrap();
            let twice = proj_plus(&Section::half(lie.coeff.scale(&rat(2)))).unwrap();
            r.check(via_operator == twice, || {
                format!("L_1 = 2 Lie derivative at k={k} n={n}")
            });
        }
    }
}

/// Runs `suites`, fanning them out over scoped threads. Results come back in
/// the order requested.
pub fn run_suites(suites: &[Suite], max_s: u32) -> Vec<SuiteReport> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&s| scope.spawn(move || run_suite(s, max_s)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for s in [
            Suite::Algebra,
            Suite::Sections,
            Suite::ClosedForm,
            Suite::Normalization,
        ] {
            let rep = run_suite(s, 2);
            assert!(rep.passed(), "{}: {:?}", rep.name, rep.failures);
            assert!(rep.checks > 0);
        }
    }

    #[test]
    fn identities_suite_flags_printed_form_only() {
        let rep = run_suite(Suite::Identities, 2);
        assert!(!rep.failures.is_empty());
        assert!(rep.failures.iter().all(|f| f.contains("printed form")));
    }
}
