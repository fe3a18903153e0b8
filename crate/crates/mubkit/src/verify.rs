//! Brute-force certification of MUB properties.
//!
//! Every check is exhaustive over the supplied data: orthonormality of each
//! basis, unbiasedness of each pair, the d+1 cardinality bound, and the
//! translation of a verified MUB set into classes of pairwise orthogonal
//! commuting unitaries. Checks never panic on malformed input; failures are
//! carried in the report. Structural violations (too many bases, mismatched
//! dimensions) are reported with deviation `f64::MAX` so they fail at any
//! tolerance.

use crate::cmatrix::{trace_inner, CMatrix};
use crate::mub_prime::MubSet;
use crate::spectral::Basis;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("input MUB set failed verification (worst deviation {worst:.3e})")]
    UnverifiedInput { worst: f64 },
}

/// One named check with its worst deviation and where it occurred.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub worst_deviation: f64,
    pub location: Vec<usize>,
}

/// Outcome of a verification run: passes iff every recorded deviation is
/// within the tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub tolerance: f64,
    pub checks: Vec<CheckRecord>,
}

impl VerifyReport {
    fn from_checks(tolerance: f64, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().all(|c| c.worst_deviation <= tolerance);
        Self {
            passed,
            tolerance,
            checks,
        }
    }

    /// Largest deviation across all checks (0.0 for an empty report).
    pub fn worst(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.worst_deviation)
            .fold(0.0, f64::max)
    }

    /// Merges another report in, keeping the stricter tolerance semantics of
    /// each record intact by re-evaluating pass/fail per original tolerance.
    pub fn merge(mut self, other: VerifyReport) -> VerifyReport {
        let passed = self.passed && other.passed;
        self.checks.extend(other.checks);
        VerifyReport {
            passed,
            tolerance: self.tolerance,
            checks: self.checks,
        }
    }
}

/// Worker count for pairwise checks: the MUBKIT_THREADS environment
/// variable when set, else available parallelism capped at 8.
pub(crate) fn thread_count() -> usize {
    match std::env::var("MUBKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(n) if n >= 1 => n,
        _ => std::thread::available_parallelism()
            .map(|n| n.get().min(8))
            .unwrap_or(1),
    }
}

/// Applies `f` to each item, fanning out over scoped threads in contiguous
/// chunks; results come back in input order.
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = thread_count().min(items.len().max(1));
    if workers <= 1 || items.len() < 4 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let mut out: Vec<Vec<R>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|slice| scope.spawn(|| slice.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        out = handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect();
    });
    out.into_iter().flatten().collect()
}

/// Max-norm deviation of B^dagger B from the identity, with the worst index.
fn orthonormal_deviation(basis: &Basis) -> (f64, Vec<usize>) {
    let d = basis.dim();
    let g = basis.gram(basis).expect("same dim");
    let mut worst = 0.0;
    let mut loc = vec![0, 0];
    for r in 0..d {
        for c in 0..d {
            let expect = if r == c {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            let dev = (g.get(r, c) - expect).norm();
            if dev > worst {
                worst = dev;
                loc = vec![r, c];
            }
        }
    }
    (worst, loc)
}

/// Checks a single basis for orthonormality.
pub fn check_orthonormal(basis: &Basis, tol: f64) -> VerifyReport {
    let (worst, loc) = orthonormal_deviation(basis);
    VerifyReport::from_checks(
        tol,
        vec![CheckRecord {
            name: "orthonormal".to_string(),
            worst_deviation: worst,
            location: loc,
        }],
    )
}

fn unbiased_deviation(b1: &Basis, b2: &Basis) -> (f64, Vec<usize>) {
    let d = b1.dim();
    let target = 1.0 / (d as f64).sqrt();
    let g = b1.gram(b2).expect("dims checked by caller");
    let mut worst = 0.0;
    let mut loc = vec![0, 0];
    for r in 0..d {
        for c in 0..d {
            let dev = (g.get(r, c).norm() - target).abs();
            if dev > worst {
                worst = dev;
                loc = vec![r, c];
            }
        }
    }
    (worst, loc)
}

/// Checks that every cross inner product between two bases has modulus
/// 1/sqrt(d). A dimension mismatch is a structural failure.
pub fn check_unbiased_pair(b1: &Basis, b2: &Basis, tol: f64) -> VerifyReport {
    if b1.dim() != b2.dim() {
        return VerifyReport::from_checks(
            tol,
            vec![CheckRecord {
                name: "unbiased_dimension_match".to_string(),
                worst_deviation: f64::MAX,
                location: vec![b1.dim(), b2.dim()],
            }],
        );
    }
    let (worst, loc) = unbiased_deviation(b1, b2);
    VerifyReport::from_checks(
        tol,
        vec![CheckRecord {
            name: "unbiased".to_string(),
            worst_deviation: worst,
            location: loc,
        }],
    )
}

/// Certifies a whole MUB set: the d+1 cardinality bound (structural, fails
/// at any tolerance), orthonormality of every basis, and unbiasedness of
/// every pair.
pub fn check_mub_set(set: &MubSet, tol: f64) -> VerifyReport {
    let d = set.dim;
    let mut checks = Vec::new();

    let count = set.bases.len();
    checks.push(CheckRecord {
        name: "basis_count_bound".to_string(),
        worst_deviation: if count >= 1 && count <= d + 1 {
            0.0
        } else {
            f64::MAX
        },
        location: vec![count, d + 1],
    });

    for (i, basis) in set.bases.iter().enumerate() {
        if basis.dim() != d {
            checks.push(CheckRecord {
                name: format!("dimension[{i}]"),
                worst_deviation: f64::MAX,
                location: vec![basis.dim(), d],
            });
        }
    }
    if checks.iter().any(|c| c.worst_deviation == f64::MAX) {
        return VerifyReport::from_checks(tol, checks);
    }

    for (i, basis) in set.bases.iter().enumerate() {
        let (worst, mut loc) = orthonormal_deviation(basis);
        let mut location = vec![i];
        location.append(&mut loc);
        checks.push(CheckRecord {
            name: format!("orthonormal[{i}]"),
            worst_deviation: worst,
            location,
        });
    }

    let pairs: Vec<(usize, usize)> = (0..count)
        .flat_map(|i| ((i + 1)..count).map(move |j| (i, j)))
        .collect();
    let pair_checks = par_map(&pairs, |&(i, j)| {
        let (worst, mut loc) = unbiased_deviation(&set.bases[i], &set.bases[j]);
        let mut location = vec![i, j];
        location.append(&mut loc);
        CheckRecord {
            name: format!("unbiased[{i},{j}]"),
            worst_deviation: worst,
            location,
        }
    });
    checks.extend(pair_checks);
    VerifyReport::from_checks(tol, checks)
}

/// Turns a verified MUB set into one class of d commuting unitaries per
/// basis: U_{j,t} = sum_k e^{2 pi i t (k+1)/d} |psi_k><psi_k| with
/// U_{j,0} the identity.
///
/// Rejects input that does not pass [`check_mub_set`] at the set's own
/// tolerance.
pub fn mub_to_classes(set: &MubSet) -> Result<Vec<Vec<CMatrix>>, VerifyError> {
    let report = check_mub_set(set, set.tol);
    if !report.passed {
        return Err(VerifyError::UnverifiedInput {
            worst: report.worst(),
        });
    }
    let d = set.dim;
    let mut classes = Vec::with_capacity(set.bases.len());
    for basis in &set.bases {
        let mut class = Vec::with_capacity(d);
        class.push(CMatrix::identity(d));
        for t in 1..d {
            let mut u = CMatrix::zeros(d);
            for k in 0..d {
                let col = basis.column(k);
                let lambda = Complex64::from_polar(1.0, TAU * (t * (k + 1)) as f64 / d as f64);
                for r in 0..d {
                    for c in 0..d {
                        let v = u.get(r, c) + lambda * col[r] * col[c].conj();
                        u.set(r, c, v);
                    }
                }
            }
            class.push(u);
        }
        classes.push(class);
    }
    Ok(classes)
}

/// Checks that class members are pairwise trace-orthogonal with squared
/// norm d, counting the shared identity once, and that the operator count
/// respects 1 + #classes (d-1) <= d^2.
///
/// Inner products are compared within `tol * d` (the report's tolerance).
pub fn check_orthogonal_classes(classes: &[Vec<CMatrix>], tol: f64) -> VerifyReport {
    let d = classes
        .first()
        .and_then(|c| c.first())
        .map(|m| m.dim())
        .unwrap_or(0);
    let scaled_tol = tol * d as f64;
    let mut checks = Vec::new();

    let total = 1 + classes
        .iter()
        .map(|c| c.len().saturating_sub(1))
        .sum::<usize>();
    checks.push(CheckRecord {
        name: "operator_count_bound".to_string(),
        worst_deviation: if d > 0 && total <= d * d {
            0.0
        } else {
            f64::MAX
        },
        location: vec![total, d * d],
    });
    // No commuting orthogonal class may exceed d members; a larger claim is
    // structurally impossible and rejected without looking at tolerances.
    for (j, class) in classes.iter().enumerate() {
        if class.len() > d {
            checks.push(CheckRecord {
                name: format!("class_size_bound[{j}]"),
                worst_deviation: f64::MAX,
                location: vec![j, class.len(), d],
            });
        }
    }

    // The shared identity plus every non-identity member, labeled by
    // (class, index-within-class); the identity carries label (0, 0).
    let mut labeled: Vec<(usize, usize, &CMatrix)> = Vec::with_capacity(total);
    if let Some(first) = classes.first().and_then(|c| c.first()) {
        labeled.push((0, 0, first));
    }
    for (j, class) in classes.iter().enumerate() {
        for (t, u) in class.iter().enumerate().skip(1) {
            labeled.push((j, t, u));
        }
    }

    let index_pairs: Vec<(usize, usize)> = (0..labeled.len())
        .flat_map(|a| (a..labeled.len()).map(move |b| (a, b)))
        .collect();
    let results = par_map(&index_pairs, |&(a, b)| {
        let (ja, ta, ua) = labeled[a];
        let (jb, tb, ub) = labeled[b];
        let inner = trace_inner(ua, ub).expect("equal dims");
        let expected = if a == b {
            Complex64::new(d as f64, 0.0)
        } else if ja == jb && ta == tb {
            // Same label can only happen for a == b; distinct entries with
            // equal labels would be duplicated operators.
            Complex64::new(d as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        ((inner - expected).norm(), vec![ja, ta, jb, tb])
    });
    let (worst, location) = results
        .into_iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap_or((0.0, vec![0, 0, 0, 0]));
    checks.push(CheckRecord {
        name: "class_orthogonality".to_string(),
        worst_deviation: worst,
        location,
    });
    VerifyReport::from_checks(scaled_tol, checks)
}
