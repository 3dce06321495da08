//! Nonnegative integer solutions of degree equations `Σ a_i d_i = n` in a
//! grading group: Hilbert bases of the kernel monoid, minimal elements of
//! fibers, and the monoid-is-group test.
//!
//! Each torsion coordinate `Z/q` becomes the equation `Σ a_i d_i = q·u` with
//! one extra unknown `u ≥ 0`; residues are stored in `[0, q)` so the
//! left side is never negative and one slack suffices. The completion
//! procedure is Contejean–Devie: a frontier ordered by total degree, grown
//! only along directions that decrease the defect, pruned by domination.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::ToPrimitive;

use crate::abelian::{GradingGroup, GroupElement};
use crate::error::{Error, Result};

pub const DEFAULT_STEP_CAP: u64 = 10_000_000;

static STEP_CAP: AtomicU64 = AtomicU64::new(DEFAULT_STEP_CAP);

/// Sets the process-wide cap on frontier expansions per solver call.
pub fn set_step_cap(cap: u64) {
    STEP_CAP.store(cap, Ordering::Relaxed);
}

pub fn step_cap() -> u64 {
    STEP_CAP.load(Ordering::Relaxed)
}

/// Degrees `d_1..d_n` in a grading group, read as the monoid map `ℕ^n → L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSystem {
    group: GradingGroup,
    degrees: Vec<GroupElement>,
}

impl DegreeSystem {
    pub fn new(group: GradingGroup, degrees: Vec<GroupElement>) -> Result<Self> {
        for d in &degrees {
            group.check(d)?;
        }
        Ok(DegreeSystem { group, degrees })
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Constraint columns: one per variable, plus one slack column per
    /// torsion coordinate. Rows are the group coordinates.
    fn columns(&self, target: Option<&GroupElement>) -> Result<Vec<Vec<i64>>> {
        let small = |e: &GroupElement| {
            e.to_i64()
                .ok_or_else(|| Error::Unsupported(format!("degree {e} does not fit in 64-bit arithmetic")))
        };
        let r = self.group.free_rank();
        let s = self.group.torsion().len();
        let mut cols: Vec<Vec<i64>> = self.degrees.iter().map(small).collect::<Result<_>>()?;
        if let Some(t) = target {
            cols.push(small(t)?.iter().map(|c| -c).collect());
        }
        for (i, q) in self.group.torsion().iter().enumerate() {
            let q = q
                .to_i64()
                .ok_or_else(|| Error::Unsupported(format!("torsion order {q} is too large")))?;
            let mut col = vec![0; r + s];
            col[r + i] = -q;
            cols.push(col);
        }
        Ok(cols)
    }
}

/// Solutions found by the completion procedure, in the extended unknowns.
struct Solver<'a> {
    cols: &'a [Vec<i64>],
    rows: usize,
    steps: u64,
    cap: u64,
}

impl Solver<'_> {
    fn image(&self, x: &[u32]) -> Vec<i64> {
        let mut v = vec![0i64; self.rows];
        for (j, &k) in x.iter().enumerate() {
            if k > 0 {
                for (r, c) in self.cols[j].iter().enumerate() {
                    v[r] += c * k as i64;
                }
            }
        }
        v
    }

    fn dot(&self, v: &[i64], j: usize) -> i64 {
        v.iter().zip(&self.cols[j]).map(|(a, b)| a * b).sum()
    }

    /// Minimal nonzero solutions reachable from `starts`, never growing the
    /// coordinates in `frozen`, pruned against `known`.
    fn complete(&mut self, starts: Vec<Vec<u32>>, frozen: &[usize], known: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
        let n = self.cols.len();
        let mut found: Vec<Vec<u32>> = Vec::new();
        let dominated = |x: &[u32], set: &[Vec<u32>]| set.iter().any(|b| b.iter().zip(x).all(|(p, q)| p <= q));
        let mut frontier: BTreeSet<Vec<u32>> = starts.into_iter().collect();
        while !frontier.is_empty() {
            let mut next = BTreeSet::new();
            let mut level_solutions = Vec::new();
            for x in &frontier {
                let v = self.image(x);
                if v.iter().all(|&c| c == 0) {
                    level_solutions.push(x.clone());
                    continue;
                }
                self.steps += 1;
                if self.steps > self.cap {
                    return Err(Error::ResourceCap { steps: self.cap });
                }
                for j in 0..n {
                    if frozen.contains(&j) || self.dot(&v, j) >= 0 {
                        continue;
                    }
                    let mut y = x.clone();
                    y[j] += 1;
                    if dominated(&y, known) || dominated(&y, &found) || dominated(&y, &level_solutions) {
                        continue;
                    }
                    next.insert(y);
                }
            }
            found.extend(level_solutions);
            frontier = next.into_iter().filter(|y| !dominated(y, &found)).collect();
        }
        Ok(found)
    }
}

fn unit(n: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

/// Componentwise-minimal nonzero vectors, sorted descending lexicographically.
fn minimal_sorted(mut v: Vec<Vec<u32>>, keep_zero: bool) -> Vec<Vec<u32>> {
    v.retain(|x| keep_zero || x.iter().any(|&c| c > 0));
    v.sort();
    v.dedup();
    let out: Vec<Vec<u32>> = v
        .iter()
        .filter(|x| !v.iter().any(|y| y != *x && y.iter().zip(x.iter()).all(|(a, b)| a <= b)))
        .cloned()
        .collect();
    let mut out = out;
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn extended_kernel(cols: &[Vec<i64>], rows: usize, frozen: &[usize]) -> Result<Vec<Vec<u32>>> {
    let n = cols.len();
    let mut solver = Solver {
        cols,
        rows,
        steps: 0,
        cap: step_cap(),
    };
    let starts = (0..n).filter(|j| !frozen.contains(j)).map(|j| unit(n, j)).collect();
    solver.complete(starts, frozen, &[])
}

/// The Hilbert basis of `{a ∈ ℕ^n : Σ a_i d_i = 0}`.
pub fn kernel_hilbert_basis(system: &DegreeSystem) -> Result<Vec<Vec<u32>>> {
    let cols = system.columns(None)?;
    let rows = system.group.arity();
    let ext = extended_kernel(&cols, rows, &[])?;
    let n = system.len();
    Ok(minimal_sorted(
        ext.into_iter().map(|x| x[..n].to_vec()).collect(),
        false,
    ))
}

/// Minimal elements of `{a ∈ ℕ^n : Σ a_i d_i = target}`; empty when the fiber
/// is empty.
pub fn fiber_minimal_elements(system: &DegreeSystem, target: &GroupElement) -> Result<Vec<Vec<u32>>> {
    system.group.check(target)?;
    let n = system.len();
    let cols = system.columns(Some(target))?;
    let rows = system.group.arity();
    let z = n;
    // kernel solutions of the homogenized system with z = 0 prune the search
    let kernel = extended_kernel(&cols, rows, &[z])?;
    let mut solver = Solver {
        cols: &cols,
        rows,
        steps: 0,
        cap: step_cap(),
    };
    let found = solver.complete(vec![unit(cols.len(), z)], &[z], &kernel)?;
    Ok(minimal_sorted(
        found.into_iter().map(|x| x[..n].to_vec()).collect(),
        true,
    ))
}

/// True when the submonoid of `group` generated by `elements` is a group.
pub fn monoid_is_group(group: &GradingGroup, elements: &[GroupElement]) -> Result<bool> {
    let system = DegreeSystem::new(group.clone(), elements.to_vec())?;
    for s in elements {
        let minus = group.neg(s)?;
        if fiber_minimal_elements(&system, &minus)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimal exponent vectors `a` with `Σ a_i d_i ≤ -1` for integer degrees:
/// the monomial generators of the ideal spanned by negative-degree elements.
pub fn negative_cutoff_monomials(degrees: &[i64]) -> Result<Vec<Vec<u32>>> {
    let z = GradingGroup::free(1);
    let mut degs: Vec<GroupElement> = degrees.iter().map(|&d| z.element(&[d])).collect::<Result<_>>()?;
    degs.push(z.element(&[1])?);
    let system = DegreeSystem::new(z.clone(), degs)?;
    let sols = fiber_minimal_elements(&system, &z.element(&[-1])?)?;
    let n = degrees.len();
    Ok(minimal_sorted(
        sols.into_iter().map(|x| x[..n].to_vec()).collect(),
        false,
    ))
}
