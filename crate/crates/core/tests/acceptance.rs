//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Expected values come from oracles written here, not from the
//! library's own formulas.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hankelforge::forms::adjointness_report;
use hankelforge::hankel::{build_ms, lowest_weight_coords, solve_for_a, solve_for_a_trace};
use hankelforge::identities::{equivariance_expansion_a, identity_a_grid, identity_b_grid, BForm};
use hankelforge::sections::{lie_half, proj_plus};
use hankelforge::sym_tensor::{build_v, compute_cs, sym_act};
use hankelforge::tensor_rep::{apply_tensor, oj_tensor, tensor_act};
use hankelforge::{
    act_sl2, apply_b, b_as_tensor, build_ls, coeffs_a, matrix_window, HalfWeight, LaurentPoly,
    Rational, Section, Sl2Generator, SymTensor, TensorElt,
};

type Outcome = Result<Vec<String>, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn q(n: i64) -> Rational {
    Rational::from_integer(big(n))
}

fn qf(n: i64, d: i64) -> Rational {
    Rational::new(big(n), big(d))
}

fn fact(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Multiplicative binomial, zero outside `0 <= k <= n`.
fn choose(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * big(n - t) / big(t + 1);
    }
    acc
}

fn sgn(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_coefficients() -> Outcome {
    for s in 0..=40i64 {
        let oracle: Vec<Rational> = (0..=s)
            .map(|j| Rational::new(choose(s, j) * choose(s + j, j), fact(s as u64)))
            .collect();
        let su = s as u32;
        let trace = solve_for_a_trace(su).map_err(|e| format!("s={s}: {e}"))?;
        let lower: Vec<Rational> = (0..=s)
            .map(|j| q(sgn(j)) * Rational::from_integer(choose(s + j, j)))
            .collect();
        let upper: Vec<Rational> = (0..=s)
            .map(|j| {
                q(sgn(j)) * Rational::from_integer(choose(s + j, j) * choose(2 * s + 1, s + j + 1))
            })
            .collect();
        ensure(trace.after_lower == lower, || {
            format!("s={s}: first intermediate vector")
        })?;
        ensure(trace.after_upper == upper, || {
            format!("s={s}: second intermediate vector")
        })?;
        ensure(trace.a == oracle, || {
            format!("s={s}: solve_for_a differs from oracle")
        })?;
        ensure(coeffs_a(su) == oracle, || {
            format!("s={s}: coeffs_a differs from oracle")
        })?;
        if s <= 12 {
            let gj = build_ms(su)
                .solve(&lowest_weight_coords(su))
                .map_err(|e| e.to_string())?;
            ensure(gj == oracle, || format!("s={s}: elimination disagrees"))?;
        }
    }
    ensure(
        solve_for_a(2).unwrap() == vec![qf(1, 2), q(3), q(3)],
        || "a(2)".into(),
    )?;
    Ok(vec!["s = 0..40 exact, both intermediates matched".into()])
}

fn c2_order_two_matrix() -> Outcome {
    let x = LaurentPoly::from_ints([(3, 1), (4, 1), (5, 1), (6, 1)]);
    let w = matrix_window(1, &x, 6, 5).map_err(|e| e.to_string())?;
    let literal: Vec<Vec<Rational>> = [
        [0, 0, 0, 0, 0],
        [4, 0, 0, 0, 0],
        [3, 2, 0, 0, 0],
        [2, 1, 0, 0, 0],
        [1, 0, -1, -2, 0],
        [0, -1, -2, -3, -4],
    ]
    .iter()
    .map(|r| r.iter().map(|&v| q(v)).collect())
    .collect();
    // Entry (m, n) of the order-two display is (m - n) x_{m+n+1}, x_j the
    // coefficient of z^{j+1}.
    let xj = |j: i64| if (2..=5).contains(&j) { 1 } else { 0 };
    let formula: Vec<Vec<Rational>> = (0..6i64)
        .rev()
        .map(|m| (0..5i64).map(|n| q((m - n) * xj(m + n + 1))).collect())
        .collect();
    ensure(literal == formula, || {
        "literal display and formula disagree".into()
    })?;
    ensure(w.bottom_up() == literal, || {
        format!("window {:?}", w.bottom_up())
    })?;

    let mut rng = StdRng::seed_from_u64(0x4a4b);
    for trial in 0..5 {
        let terms: Vec<(i64, i64)> = (0..rng.random_range(1..6))
            .map(|_| (rng.random_range(0..12), rng.random_range(-9..10)))
            .collect();
        let x = LaurentPoly::from_ints(terms.iter().copied());
        let w = matrix_window(0, &x, 8, 8).map_err(|e| e.to_string())?;
        ensure(w.is_antidiagonal_constant(), || {
            format!("random symbol {trial}: {x}")
        })?;
        for m in 0..8 {
            for n in 0..8 {
                let expected = x.coeff(m as i64 + n as i64 + 1);
                ensure(w.entries[m][n] == expected, || {
                    format!("s=0 entry ({m},{n}) for {x}")
                })?;
            }
        }
    }
    Ok(vec![
        "order-two display reproduced; 5 random order-one windows are Hankel".into(),
    ])
}

fn oracle_lowest(s: i64) -> TensorElt {
    let mut t = TensorElt::zero();
    for i in 0..=s {
        t.add_term(
            (s - i) as u32,
            i as u32,
            q(sgn(i)) * Rational::from_integer(choose(s, i)),
        );
    }
    t
}

fn c3_lowest_weight() -> Outcome {
    for s in 0..=60i64 {
        let l = hankelforge::tensor_rep::lowest_weight(s as u32);
        ensure(l == oracle_lowest(s), || format!("l_{s} coefficients"))?;
        ensure(tensor_act(Sl2Generator::Lower, &l).is_zero(), || {
            format!("A- l_{s} != 0")
        })?;
        let e = tensor_act(Sl2Generator::Cartan, &l);
        ensure(e == l.scale(&q(2 * (s + 1))), || {
            format!("E l_{s} eigenvalue")
        })?;
    }
    Ok(vec!["s = 0..60".into()])
}

fn c4_cross_section() -> Outcome {
    for s in 1..=12u32 {
        let cs = compute_cs(s).map_err(|e| e.to_string())?;
        let oracle = Rational::from_integer(fact(2 * s as u64));
        ensure(cs == oracle, || format!("C_{s} = {cs}, expected (2s)!"))?;
        let v = build_v(s).map_err(|e| e.to_string())?;
        let lowered = sym_act(Sl2Generator::Lower, &v);
        ensure(lowered == SymTensor::power(2, s).scale(&oracle), || {
            format!("lowering v at s={s}")
        })?;
    }
    let v5 = build_v(2).map_err(|e| e.to_string())?;
    let scale = q(-8);
    let mut expected = SymTensor::zero(2);
    expected.add_term(vec![3, 2], &scale * q(1));
    expected.add_term(vec![4, 1], &scale * qf(-1, 2));
    expected.add_term(vec![5, 0], &scale * qf(1, 10));
    ensure(v5 == expected, || format!("v_5 = {v5:?}"))?;
    Ok(vec![
        "s = 1..12; v_5 = -8(d3 d2 - 1/2 d4 d1 + 1/10 d5 d0)".into()
    ])
}

/// `(d/dz)^r (c z^k)` from the falling factorial.
fn derive_monomial(k: i64, r: u32) -> (i64, i64) {
    let c = (0..r as i64).fold(1i64, |acc, t| acc * (k - t));
    (k - r as i64, c)
}

fn c5_closed_form() -> Outcome {
    let mut checked = 0usize;
    for s in 0..=6u32 {
        for j in 0..=s {
            for k in (s + 1)..=(2 * s + 8) {
                let t = oj_tensor(s, j, k).map_err(|e| format!("s={s} j={j} k={k}: {e}"))?;
                for n in 1..=(k - s) {
                    let f = Section::basis(-(n as i64));
                    let got = apply_tensor(&t, &f).map_err(|e| e.to_string())?;
                    let x = LaurentPoly::z(k as i64).derive(s - j);
                    let direct = proj_plus(&Section::half(&x * &f.coeff.derive(j))).unwrap();
                    let (ex, cx) = derive_monomial(k as i64, s - j);
                    let (ef, cf) = derive_monomial(-(n as i64), j);
                    let e = ex + ef;
                    let by_hand = if e >= 0 && cx * cf != 0 {
                        LaurentPoly::monomial(e, q(cx * cf))
                    } else {
                        LaurentPoly::zero()
                    };
                    ensure(got == direct && got.coeff == by_hand, || {
                        format!("s={s} j={j} k={k} n={n}: {} vs {}", got.coeff, by_hand)
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(vec![format!("{checked} cases")])
}

fn c6_defining_condition() -> Outcome {
    for s in 0..=12i64 {
        let b = b_as_tensor(s as u32, &LaurentPoly::z(2 * s + 1)).map_err(|e| e.to_string())?;
        ensure(b == oracle_lowest(s), || format!("s={s}"))?;
    }
    Ok(vec!["s = 0..12".into()])
}

fn c7_equivariance() -> Outcome {
    for s in 0..=4u32 {
        for k in (2 * s + 1)..=(2 * s + 8) {
            let x = LaurentPoly::z(k as i64);
            let base = b_as_tensor(s, &x).map_err(|e| e.to_string())?;
            for g in Sl2Generator::ALL {
                let moved = act_sl2(g, &Section::new(HalfWeight::symbol(s), x.clone()));
                ensure(
                    moved.weight == HalfWeight::from_twice(-2 * s as i64),
                    || "weight".into(),
                )?;
                let lhs = b_as_tensor(s, &moved.coeff).map_err(|e| e.to_string())?;
                ensure(lhs == tensor_act(g, &base), || {
                    format!("{g} at s={s} k={k}")
                })?;
            }
        }
        for k in 0..=(2 * s) {
            for n in 1..=(2 * s + 4) {
                let out = apply_b(s, &LaurentPoly::z(k as i64), &Section::basis(-(n as i64)))
                    .map_err(|e| e.to_string())?;
                ensure(out.is_zero(), || {
                    format!("kernel s={s} k={k} n={n}: {}", out.coeff)
                })?;
            }
        }
    }
    Ok(vec!["three generators, s = 0..4; kernel below 2s+1".into()])
}

fn c8_identities() -> Outcome {
    let a = identity_a_grid(8, 12).map_err(|e| e.to_string())?;
    let a_bad: Vec<_> = a.iter().filter(|r| !r.equal).collect();
    for s in 1..=4u32 {
        for k in (2 * s + 1)..=(2 * s + 8) {
            let ok = equivariance_expansion_a(s, k).map_err(|e| e.to_string())?;
            ensure(ok, || {
                format!("identity A is not the expansion at s={s} k={k}")
            })?;
        }
    }
    let b = identity_b_grid(8, 12, BForm::Printed).map_err(|e| e.to_string())?;
    let b_bad: Vec<_> = b.iter().filter(|r| !r.equal).collect();
    let corrected = identity_b_grid(8, 12, BForm::Corrected).map_err(|e| e.to_string())?;
    let corrected_bad = corrected.iter().filter(|r| !r.equal).count();
    let notes = vec![
        format!("identity A: {}/{} equal", a.len() - a_bad.len(), a.len()),
        format!(
            "identity B as printed: {}/{} equal",
            b.len() - b_bad.len(),
            b.len()
        ),
        format!(
            "identity B with C(s,l) in place of C(s,j): {}/{} equal",
            corrected.len() - corrected_bad,
            corrected.len()
        ),
    ];
    if let Some(r) = a_bad.first() {
        return Err(format!(
            "identity A fails at {:?}: {} vs {}",
            r.params, r.lhs, r.rhs
        ));
    }
    if let Some(r) = b_bad.first() {
        return Err(format!(
            "identity B as printed fails at (s,i,j) = {:?}: lhs {} rhs {}; {}",
            r.params,
            r.lhs,
            r.rhs,
            notes[1..].join("; ")
        ));
    }
    Ok(notes)
}

fn c9_adjointness() -> Outcome {
    let mut notes = Vec::new();
    for s in 0..=5u32 {
        let rep = adjointness_report(s, 2 * s + 9).map_err(|e| e.to_string())?;
        ensure(rep.is_proportional(), || {
            format!("s={s}: not proportional at {:?}", rep.offending)
        })?;
        let lambda = rep
            .lambda
            .clone()
            .ok_or_else(|| format!("s={s}: K vanishes on sweep"))?;
        if s == 0 {
            ensure(lambda == q(1), || format!("lambda_0 = {lambda}"))?;
        }
        notes.push(format!("lambda_{s} = {lambda} ({})", rep.pairing.name()));
    }
    Ok(vec![notes.join(", ")])
}

fn c10_normalization() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x10);
    for trial in 0..20 {
        let k: i64 = rng.random_range(0..14);
        let mut c: i64 = rng.random_range(-6..7);
        if c == 0 {
            c = 1;
        }
        let n: i64 = rng.random_range(1..10);
        let x = LaurentPoly::monomial(k, q(c));
        let f = LaurentPoly::z(-n);
        let via_operator = proj_plus(&Section::half(
            build_ls(1, &x).map_err(|e| e.to_string())?.apply(&f),
        ))
        .unwrap();
        let vf = Section::new(HalfWeight::VECTOR_FIELD, x.clone());
        let lie = lie_half(&vf, &Section::half(f.clone())).map_err(|e| e.to_string())?;
        let twice = proj_plus(&Section::half(lie.coeff.scale(&q(2)))).unwrap();
        // Hand oracle: 2 (x f' + 1/2 x' f) = (2(-n) + k) c z^{k-n-1}.
        let e = k - n - 1;
        let by_hand = if e >= 0 {
            LaurentPoly::monomial(e, q((k - 2 * n) * c))
        } else {
            LaurentPoly::zero()
        };
        ensure(
            via_operator == twice && via_operator.coeff == by_hand,
            || format!("trial {trial}: x = {x}, f = {f}"),
        )?;
    }
    Ok(vec!["20 random monomial symbols".into()])
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "coefficients via factorized solve, s <= 40",
            Duration::from_secs(5),
            c1_coefficients,
        ),
        (
            "order-two matrix display and order-one Hankel windows",
            Duration::from_secs(1),
            c2_order_two_matrix,
        ),
        (
            "lowest-weight vectors, s <= 60",
            Duration::from_secs(2),
            c3_lowest_weight,
        ),
        (
            "equivariant cross-section, s <= 12",
            Duration::from_secs(30),
            c4_cross_section,
        ),
        (
            "closed form of O_j against direct computation",
            Duration::from_secs(10),
            c5_closed_form,
        ),
        (
            "defining condition on z^(2s+1), s <= 12",
            Duration::from_secs(5),
            c6_defining_condition,
        ),
        (
            "equivariance and kernel",
            Duration::from_secs(10),
            c7_equivariance,
        ),
        (
            "binomial identities A and B",
            Duration::from_secs(20),
            c8_identities,
        ),
        (
            "adjointness of form and operator, s <= 5",
            Duration::from_secs(10),
            c9_adjointness,
        ),
        (
            "order-one operator is twice the Lie derivative",
            Duration::from_secs(1),
            c10_normalization,
        ),
    ];
    let mut failed = 0;
    for (idx, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let timing = if took <= *budget {
            format!("{:.3}s", took.as_secs_f64())
        } else {
            format!(
                "{:.3}s, over the {}s budget",
                took.as_secs_f64(),
                budget.as_secs()
            )
        };
        match outcome {
            Ok(notes) => println!("PASS {:>2} {name} [{timing}] {}", idx + 1, notes.join("; ")),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{timing}] {why}", idx + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
