//! Post-hoc checks of a computed T-sequence.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{evaluate_word, Level, TSequenceResult};
use crate::lattice::Lattice;
use crate::linalg::{rank, BigInt, BigRational, RationalMatrix};
use crate::nilpotent::{exp_nilpotent, log_unipotent, LieAlgebraRep};

/// Outcome of the four output checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    /// Every generator maps the lattice onto itself.
    pub preserves_lattice: bool,
    /// The number of generators equals `dim g`.
    pub hirsch_length: bool,
    /// The logarithms of the generators span `g`.
    pub log_span: bool,
    /// Kernel generators commute with every generator.
    pub central: bool,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.preserves_lattice && self.hirsch_length && self.log_span && self.central
    }
}

/// Checks a generator list against its problem. The last `central_count`
/// generators are the kernel layer.
pub fn verify_generators(
    lattice: &Lattice,
    g: &LieAlgebraRep,
    generators: &[RationalMatrix],
    central_count: usize,
) -> VerificationReport {
    let mut report = VerificationReport {
        preserves_lattice: true,
        hirsch_length: true,
        log_span: true,
        central: true,
        failures: Vec::new(),
    };
    let m = lattice.dim();

    for (i, x) in generators.iter().enumerate() {
        if x.rows() != m || x.cols() != m || !lattice.is_preserved_by(x) {
            report.preserves_lattice = false;
            report
                .failures
                .push(format!("generator {i} does not preserve the lattice"));
        }
    }

    if generators.len() != g.len() {
        report.hirsch_length = false;
        report.failures.push(format!(
            "{} generators for a {}-dimensional algebra",
            generators.len(),
            g.len()
        ));
    }

    let mut logs = RationalMatrix::zeros(0, m * m);
    for (i, x) in generators.iter().enumerate() {
        match log_unipotent(x) {
            Ok(y) if y.rows() == m && y.cols() == m => {
                logs.push_row(y.flatten()).expect("row width");
            }
            _ => {
                report.log_span = false;
                report
                    .failures
                    .push(format!("generator {i} is not unipotent"));
            }
        }
    }
    if report.log_span {
        let span = g.flattened();
        let r = rank(&span);
        let joint = rank(&logs.vstack(&span).expect("widths agree"));
        if rank(&logs) != r || joint != r {
            report.log_span = false;
            report
                .failures
                .push("logarithms do not span the Lie algebra".into());
        }
    }

    if central_count > generators.len() {
        report.central = false;
        report
            .failures
            .push("more kernel generators than generators".into());
    } else {
        let start = generators.len() - central_count;
        for (i, n) in generators[start..].iter().enumerate() {
            for (j, x) in generators.iter().enumerate() {
                if n.mul(x) != x.mul(n) {
                    report.central = false;
                    report.failures.push(format!(
                        "kernel generator {} does not commute with generator {j}",
                        start + i
                    ));
                }
            }
        }
    }
    report
}

/// [`verify_generators`] on the top level, with the centrality check
/// repeated on every derived level.
pub fn verify(result: &TSequenceResult) -> VerificationReport {
    let mut report = verify_generators(
        &result.lattice,
        &result.lie_algebra,
        &result.generators,
        result.central_count(),
    );
    for (depth, level) in result.root.chain().into_iter().enumerate().skip(1) {
        let (_, l) = level.counts();
        let gens = &level.generators;
        for n in &gens[gens.len() - l..] {
            if gens.iter().any(|x| n.mul(x) != x.mul(n)) {
                report.central = false;
                report.failures.push(format!(
                    "a kernel generator of level {depth} is not central"
                ));
            }
        }
    }
    report
}

/// Counts of randomized structural checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructuralReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl StructuralReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn small_rational(rng: &mut StdRng) -> BigRational {
    BigRational::new(
        rng.gen_range(-3i64..=3).into(),
        rng.gen_range(1i64..=3).into(),
    )
}

fn random_combination(rng: &mut StdRng, basis: &[RationalMatrix], dim: usize) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(dim, dim);
    for x in basis {
        out.add_scaled(&small_rational(rng), x);
    }
    out
}

/// Randomized checks of the identities the construction relies on, on every
/// level:
///
/// - `eps(g h) = eps(g) + eps(h)` for `g` in `G`, `h` in the kernel group;
/// - `eps(g h) - eps(g) - eps(h)` is integral for lattice-preserving `g, h`;
/// - `eps(exp y) = eps(y)` for `y` in the kernel of the derived action;
/// - kernel generators commute with the level's generators;
/// - the derived action of `exp x` is `exp` of the derived action of `x`;
/// - the derived action of each generator is the recorded word in the
///   derived generators, and kernel generators act trivially.
pub fn structural_check(result: &TSequenceResult, seed: u64, trials: usize) -> StructuralReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = StructuralReport::default();
    for (depth, level) in result.root.chain().into_iter().enumerate() {
        check_level(level, depth, &mut rng, trials, &mut report);
    }
    report
}

fn check_level(
    level: &Level,
    depth: usize,
    rng: &mut StdRng,
    trials: usize,
    report: &mut StructuralReport,
) {
    let Some(layer) = &level.layer else {
        return;
    };
    let m = level.dim;
    let ctx = &layer.ctx;
    let data = &layer.data;
    let gens = &layer.adapted_generators;
    let n_basis = data.n_basis.basis();
    let eps = |x: &RationalMatrix| ctx.error_map_adapted(x);
    let id = RationalMatrix::identity(m);

    for x in gens {
        report.check(x.is_integral(), || {
            format!("level {depth}: generator is not integral")
        });
    }

    for _ in 0..trials {
        let Ok(g) = exp_nilpotent(&random_combination(rng, data.g.basis(), m)) else {
            report.check(false, || format!("level {depth}: exp failed"));
            continue;
        };
        let y = random_combination(rng, n_basis, m);
        let h = id.add(&y);
        report.check(eps(&g.mul(&h)) == eps(&g).add(&eps(&h)), || {
            format!("level {depth}: eps is not additive on G x N")
        });

        match exp_nilpotent(&y) {
            Ok(ey) => report.check(eps(&ey) == eps(&y), || {
                format!("level {depth}: eps(exp y) differs from eps(y)")
            }),
            Err(_) => report.check(false, || format!("level {depth}: exp failed")),
        }

        let x = random_combination(rng, data.g.basis(), m);
        let lhs = exp_nilpotent(&data.derived_action(&x));
        let rhs = exp_nilpotent(&x).map(|e| data.derived_action(&e));
        report.check(matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b), || {
            format!("level {depth}: derived action does not commute with exp")
        });

        if !gens.is_empty() {
            let a = &gens[rng.gen_range(0..gens.len())];
            let b = &gens[rng.gen_range(0..gens.len())];
            let defect = eps(&a.mul(b)).sub(&eps(a)).sub(&eps(b));
            report.check(defect.is_integral(), || {
                format!("level {depth}: eps is not a morphism modulo the induced lattice")
            });
        }
    }

    let k = layer.k();
    for n in &gens[k..] {
        report.check(gens.iter().all(|x| n.mul(x) == x.mul(n)), || {
            format!("level {depth}: kernel generator is not central")
        });
        report.check(data.derived_action(n).is_identity(), || {
            format!("level {depth}: kernel generator acts on the derived space")
        });
    }
    let sub_dim = layer.sub.dim;
    for (i, x) in gens[..k].iter().enumerate() {
        let w: Vec<BigInt> = layer.relations.row(i).to_vec();
        let ok = evaluate_word(&layer.sub.generators, &w, sub_dim)
            .map(|h| h == data.derived_action(x))
            .unwrap_or(false);
        report.check(ok, || {
            format!("level {depth}: generator {i} projects to the wrong word")
        });
    }
}
