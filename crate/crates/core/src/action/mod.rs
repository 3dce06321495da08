//! Geometry of one action: the quotient, fixed loci, stabilizers of rational
//! points, inertia strata, the `X_±` charts of a `Z`-grading and GIT charts.

use rayon::prelude::*;

use crate::abelian::{quotient_group, GradingGroup, GroupElement, QuotientMap, Subgroup};
use crate::error::{Error, Result};
use crate::gradedalg::{invariant_subring, kill_variables, GradedRing, PresentedSubring, RationalPoint};
use crate::groebner::Ideal;
use crate::lattice::{fiber_minimal_elements, monoid_is_group, negative_cutoff_monomials};
use crate::poly::Polynomial;

/// `X//G = Spec(A_0)`, graded trivially by the same group.
pub fn quotient_presentation(ring: &GradedRing) -> Result<GradedRing> {
    invariant_subring(ring)?.to_ring(ring.field(), ring.group())
}

/// `X^{G'}` for `G' = D_{L/L'}`: variables of degree outside `L'` are killed.
pub fn fixed_locus(ring: &GradedRing, sub: &Subgroup) -> Result<GradedRing> {
    same_group(ring, sub)?;
    let (keep, killed) = split_by_subgroup(ring, sub)?;
    kill_variables(ring, &keep, &killed)
}

fn same_group(ring: &GradedRing, sub: &Subgroup) -> Result<()> {
    if sub.ambient() != ring.group() {
        return Err(Error::AmbientMismatch(format!(
            "subgroup of {} used with a ring graded by {}",
            sub.ambient(),
            ring.group()
        )));
    }
    Ok(())
}

fn split_by_subgroup(ring: &GradedRing, sub: &Subgroup) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut keep = Vec::new();
    let mut killed = Vec::new();
    for (i, d) in ring.degrees().iter().enumerate() {
        if sub.contains(d)? {
            keep.push(i);
        } else {
            killed.push(i);
        }
    }
    Ok((keep, killed))
}

/// Generators of the ideal of `X^{G'}` in the ambient polynomial ring.
fn fixed_locus_ideal(ring: &GradedRing, sub: &Subgroup) -> Result<Ideal> {
    let (_, killed) = split_by_subgroup(ring, sub)?;
    ring.relations().extend(killed.into_iter().map(|i| ring.var(i)))
}

#[derive(Clone, Debug)]
pub struct StabilizerResult {
    /// `L_x`, generated by the degrees of the nonvanishing coordinates.
    pub support: Subgroup,
    /// `L → L/L_x`; the stabilizer is `D_{L/L_x}`.
    pub characters: QuotientMap,
}

impl StabilizerResult {
    pub fn is_trivial(&self) -> bool {
        self.characters.target().is_trivial()
    }
}

pub fn support_subgroup(ring: &GradedRing, x: &RationalPoint) -> Result<Subgroup> {
    let degs = x.support().into_iter().map(|i| ring.degrees()[i].clone()).collect();
    Subgroup::from_generators(ring.group(), degs)
}

pub fn stabilizer(ring: &GradedRing, x: &RationalPoint) -> Result<StabilizerResult> {
    let support = support_subgroup(ring, x)?;
    let characters = quotient_group(ring.group(), &support)?;
    Ok(StabilizerResult { support, characters })
}

/// The orbit of `x` is closed in its quotient fiber. Its closure is
/// `Spec k[M_x]` for the monoid `M_x` generated by the support degrees, so
/// the orbit is closed exactly when `M_x` is a group.
pub fn is_special(ring: &GradedRing, x: &RationalPoint) -> Result<bool> {
    let degs: Vec<GroupElement> = x.support().into_iter().map(|i| ring.degrees()[i].clone()).collect();
    monoid_is_group(ring.group(), &degs)
}

/// The stratum label of `x`: the canonical form of `L_x`.
pub fn inertia_stratum_of(ring: &GradedRing, x: &RationalPoint) -> Result<Subgroup> {
    support_subgroup(ring, x)
}

/// The stratum with label `L'`: the closed set `X^{G'}` minus the closed sets
/// `X^{G''}` for the strictly smaller labels `L''` inside `L'`.
#[derive(Clone, Debug)]
pub struct InertiaLocus {
    pub label: Subgroup,
    pub closed: Ideal,
    pub removed: Vec<(Subgroup, Ideal)>,
}

impl InertiaLocus {
    /// True when `x` lies in the closed part and in none of the removed parts.
    pub fn contains(&self, x: &RationalPoint) -> Result<bool> {
        let vanishes = |i: &Ideal| -> Result<bool> {
            for g in i.generators() {
                if !g.eval(x.coords())?.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        if !vanishes(&self.closed)? {
            return Ok(false);
        }
        for (_, r) in &self.removed {
            if vanishes(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Subgroups generated by subsets of the variable degrees, deduplicated and
/// sorted by canonical form.
fn degree_subset_subgroups(group: &GradingGroup, degs: &[GroupElement]) -> Result<Vec<Subgroup>> {
    if degs.len() > 16 {
        return Err(Error::Unsupported(format!(
            "stratum enumeration over {} variables (at most 16 supported)",
            degs.len()
        )));
    }
    let mut out: Vec<Subgroup> = Vec::new();
    for mask in 0u32..(1 << degs.len()) {
        let gens = (0..degs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| degs[i].clone())
            .collect();
        let s = Subgroup::from_generators(group, gens)?;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.canonical_form().cmp(b.canonical_form()));
    Ok(out)
}

pub fn inertia_stratum_locus(ring: &GradedRing, label: &Subgroup) -> Result<InertiaLocus> {
    same_group(ring, label)?;
    let closed = fixed_locus_ideal(ring, label)?;
    let inside: Vec<GroupElement> = ring
        .degrees()
        .iter()
        .filter(|d| label.contains(d).unwrap_or(false))
        .cloned()
        .collect();
    let mut removed = Vec::new();
    for s in degree_subset_subgroups(ring.group(), &inside)? {
        if s.equals(label)? {
            continue;
        }
        let ideal = fixed_locus_ideal(ring, &s)?;
        removed.push((s, ideal));
    }
    Ok(InertiaLocus {
        label: label.clone(),
        closed,
        removed,
    })
}

/// A stratum label together with a witness support set: the variables that
/// are nonzero on some geometric point of the stratum.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub label: Subgroup,
    pub support: Vec<usize>,
}

/// The nonempty inertia strata. A label occurs when some support set `T`
/// with `⟨deg T⟩ = L'` is realized by a geometric point, i.e. when
/// `I + (t_i : i ∉ T) + (1 - w·∏_{i∈T} t_i)` is not the unit ideal.
pub fn strata(ring: &GradedRing) -> Result<Vec<Stratum>> {
    let n = ring.nvars();
    if n > 16 {
        return Err(Error::Unsupported(format!(
            "stratum enumeration over {n} variables (at most 16 supported)"
        )));
    }
    let mut found: Vec<Stratum> = Vec::new();
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let label = Subgroup::from_generators(
            ring.group(),
            support.iter().map(|&i| ring.degrees()[i].clone()).collect(),
        )?;
        if found.iter().any(|s| s.label == label) {
            continue;
        }
        if support_is_realized(ring, &support)? {
            found.push(Stratum { label, support });
        }
    }
    found.sort_by(|a, b| a.label.canonical_form().cmp(b.label.canonical_form()));
    Ok(found)
}

fn support_is_realized(ring: &GradedRing, support: &[usize]) -> Result<bool> {
    let n = ring.nvars();
    let field = ring.field();
    let lift: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = ring
        .relations()
        .generators()
        .iter()
        .map(|g| g.rename(n + 1, &lift))
        .collect();
    let mut prod = Polynomial::var(field, n + 1, n);
    for i in 0..n {
        if support.contains(&i) {
            prod = &prod * &Polynomial::var(field, n + 1, i);
        } else {
            gens.push(Polynomial::var(field, n + 1, i));
        }
    }
    gens.push(&Polynomial::one(field, n + 1) - &prod);
    Ok(!Ideal::new(field, n + 1, gens)?.is_unit())
}

/// An open chart `X_f = Spec(A[1/f])` with its invariant ring.
#[derive(Clone, Debug)]
pub struct Chart {
    pub element: Polynomial,
    /// `A[w]/(w·f - 1)` with `deg w = -deg f`.
    pub ring: GradedRing,
    pub invariants: PresentedSubring,
}

fn fresh_name(ring: &GradedRing) -> String {
    std::iter::once("w".to_string())
        .chain((0..).map(|i| format!("w{i}")))
        .find(|n| ring.index_of(n).is_none())
        .expect("unbounded supply of names")
}

/// `A[1/f]` presented with one extra variable.
pub fn localization(ring: &GradedRing, f: &Polynomial) -> Result<GradedRing> {
    let d = ring
        .degree_of(f, "localized element")?
        .unwrap_or_else(|| ring.group().zero());
    let n = ring.nvars();
    let mut vars = ring.vars();
    vars.push((fresh_name(ring), ring.group().neg(&d)?));
    let lift: Vec<usize> = (0..n).collect();
    let mut rels: Vec<Polynomial> = ring
        .relations()
        .generators()
        .iter()
        .map(|g| g.rename(n + 1, &lift))
        .collect();
    let w = Polynomial::var(ring.field(), n + 1, n);
    rels.push(&(&w * &f.rename(n + 1, &lift)) - &Polynomial::one(ring.field(), n + 1));
    GradedRing::new(ring.field(), ring.group().clone(), vars, rels)
}

/// `(A_f)_0`, with generators that the relations solve for removed.
pub fn localized_invariants(ring: &GradedRing, f: &Polynomial) -> Result<Chart> {
    let local = localization(ring, f)?;
    let invariants = invariant_subring(&local)?.simplified("u")?;
    Ok(Chart {
        element: f.clone(),
        ring: local,
        invariants,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `X_+ = X \ V(A_-)` (or `X_- = X \ V(A_+)`), as the monomial generators of
/// the cut ideal and one chart per generator.
#[derive(Clone, Debug)]
pub struct SignedLocus {
    pub cut_generators: Vec<Polynomial>,
    pub charts: Vec<Chart>,
}

pub fn integer_degrees(ring: &GradedRing) -> Result<Vec<i64>> {
    if !ring.group().is_integers() {
        return Err(Error::Unsupported(format!(
            "X+ and X- need a Z-grading, found {}",
            ring.group()
        )));
    }
    ring.degrees()
        .iter()
        .map(|d| {
            d.to_i64()
                .map(|v| v[0])
                .ok_or_else(|| Error::Unsupported(format!("degree {d} is too large")))
        })
        .collect()
}

/// Monomials generating the ideal `(A_-)` (for `Plus`) or `(A_+)`.
pub fn cut_ideal_generators(ring: &GradedRing, sign: Sign) -> Result<Vec<Polynomial>> {
    let mut degs = integer_degrees(ring)?;
    if sign == Sign::Minus {
        degs.iter_mut().for_each(|d| *d = -*d);
    }
    let mut out = Vec::new();
    for e in negative_cutoff_monomials(&degs)? {
        let m = ring.monomial(&e);
        if !ring.is_zero(&m)? {
            out.push(m);
        }
    }
    Ok(out)
}

pub fn x_plus_minus(ring: &GradedRing, sign: Sign) -> Result<SignedLocus> {
    let cut_generators = cut_ideal_generators(ring, sign)?;
    let charts = cut_generators
        .par_iter()
        .map(|f| localized_invariants(ring, f))
        .collect::<Result<Vec<_>>>()?;
    Ok(SignedLocus { cut_generators, charts })
}

/// Heuristic truncation bound for [`git_charts`]: the largest torsion order
/// times the largest absolute free degree coordinate.
pub fn default_kmax(ring: &GradedRing) -> u32 {
    let r = ring.group().free_rank();
    let max_free = ring
        .degrees()
        .iter()
        .flat_map(|d| d.coords()[..r].iter().map(|c| c.magnitude().clone()))
        .max()
        .unwrap_or_default();
    let bound = ring.group().max_torsion_order().magnitude() * max_free;
    u32::try_from(&bound).unwrap_or(u32::MAX).clamp(1, 64)
}

/// Charts `X_f` for monomials `f` of degree `k·m`, `1 ≤ k ≤ k_max`, that do
/// not vanish in `A`. This truncates the semistable covering for the
/// character `m`; it is not guaranteed to cover it.
pub fn git_charts(ring: &GradedRing, m: &GroupElement, k_max: u32) -> Result<Vec<Chart>> {
    ring.group().check(m)?;
    let mut elements: Vec<Polynomial> = Vec::new();
    for k in 1..=k_max {
        let target = ring.group().scale(&k.into(), m)?;
        for e in fiber_minimal_elements(&ring.degree_system(), &target)? {
            let f = ring.monomial(&e);
            if !ring.is_zero(&f)? && !elements.contains(&f) {
                elements.push(f);
            }
        }
    }
    elements.par_iter().map(|f| localized_invariants(ring, f)).collect()
}
