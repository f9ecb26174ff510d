//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each, and exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use arithgroup::derived::{build_derived, error_map};
use arithgroup::group::{member, structural_check, verify};
use arithgroup::lattice::{integral_relations, intersect_lattice_subspace, saturate};
use arithgroup::linalg::{
    hnf, inverse, rank, snf, solve_left, BigInt, BigRational, IntegerMatrix, RationalMatrix,
};
use arithgroup::nilpotent::{compute_flag, exp_nilpotent, log_unipotent};
use arithgroup::{compute_generators, Lattice, LieAlgebraRep, TSequenceResult};
use arithgroup_cli::example::worked_example_algebra;
use arithgroup_cli::families::Family;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e(n: usize, i: usize, j: usize) -> RationalMatrix {
    RationalMatrix::unit(n, n, i - 1, j - 1)
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn run_standard(g: &LieAlgebraRep) -> Result<TSequenceResult, String> {
    let f = compute_flag(g).map_err(|e| e.to_string())?;
    compute_generators(&Lattice::standard(g.dim_v()), g, &f).map_err(|e| e.to_string())
}

/// Integral with determinant +-1, computed directly.
fn preserves_standard(x: &RationalMatrix) -> bool {
    x.to_integer().is_some_and(|m| {
        let d = m.det();
        d == BigInt::one() || d == -BigInt::one()
    })
}

fn log_span_equals(gens: &[RationalMatrix], g: &LieAlgebraRep) -> bool {
    let m = g.dim_v();
    let mut logs = RationalMatrix::zeros(0, m * m);
    for x in gens {
        match log_unipotent(x) {
            Ok(y) => logs.push_row(y.flatten()).unwrap(),
            Err(_) => return false,
        }
    }
    let span = g.flattened();
    let r = rank(&span);
    rank(&logs) == r && rank(&logs.vstack(&span).unwrap()) == r
}

/// `verify` plus the randomized structural checks; every generator run in
/// this suite goes through here.
fn invariants(r: &TSequenceResult, seed: u64) -> Result<usize, String> {
    let report = verify(r);
    ensure!(report.all_pass(), "verification: {:?}", report.failures);
    let s = structural_check(r, seed, 3);
    ensure!(s.passed(), "structural: {:?}", s.failures);
    Ok(s.checks)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = worked_example_algebra();
    let r = run_standard(&g)?;
    let elapsed = start.elapsed();
    ensure!(r.generators.len() == 3, "{} generators", r.generators.len());
    for (i, x) in r.generators.iter().enumerate() {
        ensure!(preserves_standard(x), "generator {i} does not preserve Z^4");
    }
    let id = RationalMatrix::identity(4);
    let n = id.add(&e(4, 1, 4));
    let g1 = id.add(&e(4, 1, 3));
    let g2 = id
        .add(&e(4, 2, 3))
        .add(&e(4, 3, 4))
        .add(&e(4, 2, 4).scale(&q(1, 2)));
    let g2sq = g2.mul(&g2);
    for (name, x) in [("n", &n), ("g1", &g1), ("g2^2", &g2sq)] {
        let exps = member(&r, x).map_err(|e| e.to_string())?;
        ensure!(exps.is_some(), "{name} is not a member");
    }
    ensure!(
        log_span_equals(&r.generators, &g),
        "log span differs from g"
    );
    invariants(&r, 1)?;
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("3 generators, n, g1, g2^2 members, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let g = worked_example_algebra();
    let f = compute_flag(&g).map_err(|e| e.to_string())?;
    let (data, ctx) =
        build_derived(&Lattice::standard(4), &g, &f, true).map_err(|e| e.to_string())?;
    ensure!(
        data.n_basis.basis() == [e(4, 1, 4)],
        "n basis {:?}",
        data.n_basis.basis()
    );
    ensure!(data.vstar_dim == 5, "derived dimension {}", data.vstar_dim);
    ensure!(
        data.lstar == Lattice::standard(5),
        "derived lattice is not Z^5"
    );
    ensure!(
        data.adapted.basis.is_identity(),
        "adapted basis is not the standard one"
    );

    let g1p = RationalMatrix::identity(4)
        .add(&e(4, 1, 3))
        .add(&e(4, 1, 4).scale(&q(1, 2)));
    let eps = error_map(&g1p, &ctx);
    let expected = RationalMatrix::from_rows(vec![vec![q(1, 2)], vec![q(0, 1)]], 1).unwrap();
    ensure!(eps == expected, "eps(g1') = {eps}");

    let r = run_standard(&g)?;
    let layer = r.root.layer.as_ref().ok_or("no top layer")?;
    let h = &layer.relations.basis.h;
    ensure!(
        *h == IntegerMatrix::from_i64(2, 2, &[1, 0, 0, 2]),
        "relation HNF {h}"
    );
    ensure!(
        layer.lift_errors == vec![vec![q(0, 1), q(0, 1)], vec![q(0, 1), q(1, 2)]],
        "lift errors {:?}",
        layer.lift_errors
    );
    Ok("n = span{e14}, dim V* = 5, eps(g1') = (1/2, 0), HNF {(1,0),(0,2)}".into())
}

fn criterion_3() -> Outcome {
    let limit = Duration::from_secs(600);
    let mut rows = Vec::new();
    for family in [Family::Gn, Family::Hn] {
        for n in 6..=9 {
            let g = family.algebra(n).map_err(|e| e.to_string())?;
            let start = Instant::now();
            let r = run_standard(&g)?;
            let elapsed = start.elapsed();
            ensure!(
                r.hirsch_length() == family.dimension(n),
                "{family} n={n}: hirsch length {}",
                r.hirsch_length()
            );
            ensure!(elapsed < limit, "{family} n={n}: {elapsed:?}");
            invariants(&r, n as u64)?;
            rows.push(format!("{family}{n} {:.2}s", elapsed.as_secs_f64()));
        }
    }
    Ok(rows.join(", "))
}

fn random_int_matrix(rng: &mut StdRng) -> IntegerMatrix {
    let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let v: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-10..=10)).collect();
    IntegerMatrix::from_i64(r, c, &v)
}

fn random_unimodular(rng: &mut StdRng, n: usize) -> IntegerMatrix {
    let mut u = IntegerMatrix::identity(n);
    for _ in 0..rng.gen_range(0..15) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        match rng.gen_range(0..3) {
            0 => u.swap_rows(i, j),
            1 => u.negate_row(i),
            _ if i != j => u.row_axpy(i, &BigInt::from(rng.gen_range(-3..=3)), j),
            _ => {}
        }
    }
    u
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    for case in 0..500 {
        let a = random_int_matrix(&mut rng);
        let d = snf(&a);
        ensure!(d.p.mul(&a).mul(&d.q) == d.s, "case {case}: S != PAQ");
        ensure!(
            d.p.is_unimodular() && d.q.is_unimodular(),
            "case {case}: not unimodular"
        );
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                let on_diag = i == j && i < d.rank;
                ensure!(
                    on_diag || d.s[(i, j)].is_zero(),
                    "case {case}: off-diagonal entry"
                );
            }
        }
        for (i, x) in d.diagonal.iter().enumerate() {
            ensure!(
                *x > BigInt::zero() && d.s[(i, i)] == *x,
                "case {case}: bad diagonal"
            );
        }
        for w in d.diagonal.windows(2) {
            ensure!((&w[1] % &w[0]).is_zero(), "case {case}: divisibility chain");
        }
        let h = hnf(&a);
        ensure!(h.is_valid(), "case {case}: invalid HNF");
        let u = random_unimodular(&mut rng, a.rows());
        ensure!(
            hnf(&u.mul(&a)) == h,
            "case {case}: HNF changed under mixing"
        );
    }
    Ok("500 instances".into())
}

fn box_points(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn ints(v: &[i64]) -> Vec<BigRational> {
    v.iter()
        .map(|&x| BigRational::from_integer(x.into()))
        .collect()
}

fn in_q_span(a: &RationalMatrix, v: &[BigRational]) -> bool {
    let mut ext = a.clone();
    ext.push_row(v.to_vec()).unwrap();
    rank(&ext) == rank(a)
}

/// Membership in the lattice spanned by independent rows.
fn in_z_span(a: &RationalMatrix, v: &[BigRational]) -> bool {
    if a.rows() == 0 {
        return v.iter().all(|x| x.is_zero());
    }
    solve_left(a, v).is_some_and(|c| c.iter().all(|x| x.is_integer()))
}

fn random_rows(rng: &mut StdRng, m: usize, n: usize) -> RationalMatrix {
    loop {
        let v: Vec<i64> = (0..m * n).map(|_| rng.gen_range(-5..=5)).collect();
        let a = RationalMatrix::from_i64(m, n, &v);
        if rank(&a) == m {
            return a;
        }
    }
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut points = 0usize;
    for case in 0..60 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=n);

        let a = random_rows(&mut rng, m, n);
        let s = saturate(&a.to_integer().unwrap())
            .map_err(|e| e.to_string())?
            .to_rational();
        for p in box_points(n, 4) {
            let v = ints(&p);
            ensure!(
                in_q_span(&a, &v) == in_z_span(&s, &v),
                "saturate case {case} at {p:?}"
            );
            points += 1;
        }

        let lattice = random_rows(&mut rng, n, n);
        let sub = random_rows(&mut rng, m, n);
        let b = intersect_lattice_subspace(&lattice, &sub).map_err(|e| e.to_string())?;
        let change = b.mul(&inverse(&lattice).unwrap());
        ensure!(
            change.to_integer().is_some_and(|c| c.is_unimodular()),
            "intersect case {case}: basis of a different lattice"
        );
        let head = b.submatrix(0..m, 0..n);
        for c in box_points(n, 3) {
            let v = RationalMatrix::vec_mul(&ints(&c), &lattice);
            ensure!(
                in_q_span(&sub, &v) == in_z_span(&head, &v),
                "intersect case {case} at {c:?}"
            );
            points += 1;
        }

        let entries: Vec<BigRational> = (0..m * n)
            .map(|_| q(rng.gen_range(-5..=5), rng.gen_range(1..=5)))
            .collect();
        let a = RationalMatrix::from_vec(m, n, entries).unwrap();
        let rel = integral_relations(&a).to_rational();
        for ex in box_points(m, 5) {
            let v = RationalMatrix::vec_mul(&ints(&ex), &a);
            let integral = v.iter().all(|x| x.is_integer());
            ensure!(
                integral == in_z_span(&rel, &ints(&ex)),
                "relations case {case} at {ex:?}"
            );
            points += 1;
        }
    }
    Ok(format!("60 cases per routine, {points} box points"))
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    for n in 2..=8 {
        for case in 0..200 {
            let mut x = RationalMatrix::zeros(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    x[(i, j)] = q(rng.gen_range(-6..=6), rng.gen_range(1..=4));
                }
            }
            let u = exp_nilpotent(&x).map_err(|e| e.to_string())?;
            ensure!(
                log_unipotent(&u).map_err(|e| e.to_string())? == x,
                "dim {n} case {case}: log(exp x)"
            );
            let v = RationalMatrix::identity(n).add(&x);
            let back = exp_nilpotent(&log_unipotent(&v).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure!(back == v, "dim {n} case {case}: exp(log u)");
        }
    }
    Ok("200 per dimension 2..8".into())
}

fn criterion_7() -> Outcome {
    let mut runs = 0;
    let mut checks = 0;
    let mut algebras = vec![
        worked_example_algebra(),
        LieAlgebraRep::new(3, vec![e(3, 1, 3), e(3, 2, 3)]).unwrap(),
        LieAlgebraRep::new(3, vec![e(3, 1, 2), e(3, 1, 3), e(3, 2, 3)]).unwrap(),
    ];
    for family in [Family::Gn, Family::Hn] {
        for n in family.min_n()..=9 {
            algebras.push(family.algebra(n).map_err(|e| e.to_string())?);
        }
    }
    for (i, g) in algebras.iter().enumerate() {
        checks += invariants(&run_standard(g)?, 100 + i as u64)?;
        runs += 1;
    }
    // a non-standard lattice
    let g = worked_example_algebra();
    let basis = RationalMatrix::from_i64(4, 4, &[2, 0, 0, 0, 1, 1, 0, 0, 0, 3, 1, 0, 1, 0, 0, 2]);
    let l = Lattice::new(basis).map_err(|e| e.to_string())?;
    let r = compute_generators(&l, &g, &compute_flag(&g).unwrap()).map_err(|e| e.to_string())?;
    checks += invariants(&r, 99)?;
    runs += 1;
    Ok(format!("{runs} runs, {checks} randomized checks"))
}

fn criterion_8() -> Outcome {
    let g = LieAlgebraRep::new(3, vec![e(3, 1, 3), e(3, 2, 3)]).unwrap();
    let r = run_standard(&g)?;
    invariants(&r, 8)?;
    ensure!(r.generators.len() == 2, "{} generators", r.generators.len());
    let id = RationalMatrix::identity(3);
    let element =
        |a: &BigRational, b: &BigRational| id.add(&e(3, 1, 3).scale(a)).add(&e(3, 2, 3).scale(b));
    // output group inside the set: generators have the form with a, b integral
    for x in &r.generators {
        let d = x.sub(&id);
        let (a, b) = (d[(0, 2)].clone(), d[(1, 2)].clone());
        ensure!(element(&a, &b) == *x, "generator outside the family");
        ensure!(a.is_integer() && b.is_integer(), "non-integral generator");
    }
    // set inside the output group, and nothing else
    let half = q(1, 2);
    for a in -4..=4 {
        for b in -4..=4 {
            let (ra, rb) = (q(a, 1), q(b, 1));
            let x = element(&ra, &rb);
            ensure!(preserves_standard(&x), "({a}, {b}) does not preserve Z^3");
            ensure!(
                member(&r, &x).map_err(|e| e.to_string())?.is_some(),
                "({a}, {b}) not a member"
            );
            for y in [element(&(&ra + &half), &rb), element(&ra, &(&rb + &half))] {
                ensure!(
                    !preserves_standard(&y),
                    "half-integral element preserves Z^3"
                );
                ensure!(
                    member(&r, &y).map_err(|e| e.to_string())?.is_none(),
                    "half-integral member"
                );
            }
        }
    }
    Ok("group equals {I + a e13 + b e23 : a, b in Z} on a 9x9 box".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("worked example", criterion_1),
        ("intermediate checkpoints", criterion_2),
        ("family runs", criterion_3),
        ("normal forms", criterion_4),
        ("lattice oracles", criterion_5),
        ("exp/log round trip", criterion_6),
        ("structural invariants", criterion_7),
        ("abelian oracle", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {} [PASS] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [FAIL] {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
