//! Equivariant maps `φ: A → B` (morphisms `X' → X`): the induced map of
//! quotients, the direct strong-equivariance test `A ⊗_{A_0} B_0 ≅ B`, the
//! pointwise and fiberwise inertness tests, graded cotangent fibers, and
//! smoothness at rational points.

mod cotangent;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::abelian::Subgroup;
use crate::action::{is_special, support_subgroup};
use crate::error::{Error, Result};
use crate::gradedalg::{invariant_subring, GradedRing, PresentedSubring, RationalPoint};
use crate::groebner::{ringmap_kernel, subalgebra_membership, Ideal};
use crate::poly::{linalg, Coeff, Homogeneity, MonomialOrder, Polynomial};

pub use cotangent::{cotangent_fiber, CotangentData, CotangentFiberReport};

#[derive(Clone, Debug)]
pub struct GradedRingMap {
    source: Arc<GradedRing>,
    target: Arc<GradedRing>,
    images: Vec<Polynomial>,
}

/// A reason a proposed map is not an equivariant ring map.
#[derive(Clone, Debug, PartialEq)]
pub enum MapViolation {
    Degree {
        variable: String,
        expected: String,
        found: String,
    },
    Relation {
        index: usize,
        relation: String,
        normal_form: String,
    },
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::Degree {
                variable,
                expected,
                found,
            } => write!(f, "image of {variable} has degree {found}, expected {expected}"),
            MapViolation::Relation {
                index,
                relation,
                normal_form,
            } => write!(
                f,
                "relation {} ({relation}) maps to {normal_form}, which is not a relation of the target",
                index + 1
            ),
        }
    }
}

/// Checks that each image is homogeneous of its variable's degree and that
/// relations map to relations.
pub fn validate_map(source: &GradedRing, target: &GradedRing, images: &[Polynomial]) -> Result<Vec<MapViolation>> {
    if source.group() != target.group() {
        return Err(Error::AmbientMismatch(format!(
            "map between rings graded by {} and {}",
            source.group(),
            target.group()
        )));
    }
    if source.field() != target.field() {
        return Err(Error::AmbientMismatch(format!(
            "map between rings over {} and {}",
            source.field(),
            target.field()
        )));
    }
    if images.len() != source.nvars() {
        return Err(Error::AmbientMismatch(format!(
            "{} images given for {} source variables",
            images.len(),
            source.nvars()
        )));
    }
    let mut out = Vec::new();
    for (i, p) in images.iter().enumerate() {
        let expected = &source.degrees()[i];
        let found = match target.homogeneity(p)? {
            Homogeneity::Any => continue,
            Homogeneity::Degree(d) if d == *expected => continue,
            Homogeneity::Degree(d) => d.to_string(),
            Homogeneity::Inhomogeneous => "mixed (inhomogeneous)".to_string(),
        };
        out.push(MapViolation::Degree {
            variable: source.names()[i].clone(),
            expected: expected.to_string(),
            found,
        });
    }
    if !out.is_empty() {
        return Ok(out);
    }
    for (index, r) in source.relations().generators().iter().enumerate() {
        let nf = target.normal_form(&r.substitute(images)?)?;
        if !nf.is_zero() {
            out.push(MapViolation::Relation {
                index,
                relation: source.show(r),
                normal_form: target.show(&nf),
            });
        }
    }
    Ok(out)
}

impl GradedRingMap {
    pub fn new(source: Arc<GradedRing>, target: Arc<GradedRing>, images: Vec<Polynomial>) -> Result<Self> {
        if let Some(v) = validate_map(&source, &target, &images)?.into_iter().next() {
            return Err(match v {
                MapViolation::Degree { .. } => Error::NotHomogeneous {
                    what: "map image".into(),
                    components: v.to_string(),
                },
                MapViolation::Relation { .. } => Error::Invalid(v.to_string()),
            });
        }
        Ok(GradedRingMap { source, target, images })
    }

    pub fn from_strings(source: Arc<GradedRing>, target: Arc<GradedRing>, images: &[&str]) -> Result<Self> {
        let images = images.iter().map(|s| target.parse(s)).collect::<Result<Vec<_>>>()?;
        GradedRingMap::new(source, target, images)
    }

    pub fn identity(ring: Arc<GradedRing>) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        GradedRingMap {
            source: ring.clone(),
            target: ring,
            images,
        }
    }

    pub fn source(&self) -> &Arc<GradedRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedRing> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.source.owns(p)?;
        p.substitute(&self.images)
    }

    /// `x = f(x')`, by evaluating the images at `x'`.
    pub fn image_point(&self, x: &RationalPoint) -> Result<RationalPoint> {
        let coords = self
            .images
            .iter()
            .map(|p| p.eval(x.coords()))
            .collect::<Result<Vec<_>>>()?;
        RationalPoint::new(&self.source, coords)
    }

    /// `then ∘ self`: first `self: A → B`, then `then: B → C`.
    pub fn compose(&self, then: &GradedRingMap) -> Result<GradedRingMap> {
        if !Arc::ptr_eq(&then.source, &self.target)
            && (then.source.names() != self.target.names() || then.source.degrees() != self.target.degrees())
        {
            return Err(Error::AmbientMismatch("composed maps do not share a ring".into()));
        }
        let images = self
            .images
            .iter()
            .map(|p| p.substitute(&then.images))
            .collect::<Result<Vec<_>>>()?;
        GradedRingMap::new(self.source.clone(), then.target.clone(), images)
    }
}

/// The induced map `A_0 → B_0` on invariant rings.
#[derive(Clone, Debug)]
pub struct QuotientMorphism {
    pub source: PresentedSubring,
    pub target: PresentedSubring,
    /// Image of each source generator, in the target generators.
    pub images: Vec<Polynomial>,
}

impl QuotientMorphism {
    /// True when every target generator lies in the image.
    pub fn is_surjective(&self) -> Result<bool> {
        for k in 0..self.target.len() {
            let v = Polynomial::var(self.target.relations.field(), self.target.len(), k);
            if subalgebra_membership(&v, &self.images, &self.target.relations)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn quotient_morphism(phi: &GradedRingMap) -> Result<QuotientMorphism> {
    let source = invariant_subring(&phi.source)?;
    let target = invariant_subring(&phi.target)?;
    let mut images = Vec::new();
    for g in &source.generators {
        let image = phi.apply(g)?;
        match target.express(&phi.target, &image)? {
            Some(e) => images.push(e),
            None => {
                return Err(Error::Internal(format!(
                    "image {} of the invariant {} is not invariant",
                    phi.target.show(&image),
                    phi.source.show(g)
                )))
            }
        }
    }
    Ok(QuotientMorphism { source, target, images })
}

/// Why `A ⊗_{A_0} B_0 → B` fails to be an isomorphism.
#[derive(Clone, Debug, PartialEq)]
pub enum StrongWitness {
    /// A variable of `B` outside the image.
    Unreached(String),
    /// A nonzero element of the tensor product killed by the map to `B`.
    Kernel(String),
}

impl fmt::Display for StrongWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrongWitness::Unreached(v) => write!(f, "variable {v} is not in the image of A (x) B_0"),
            StrongWitness::Kernel(p) => write!(f, "{p} is nonzero in A (x) B_0 but maps to zero in B"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StrongVerdict {
    pub holds: bool,
    pub witness: Option<StrongWitness>,
    /// The presentation of `A ⊗_{A_0} B_0` that was compared with `B`.
    pub tensor: GradedRing,
}

fn fresh_prefix(ring: &GradedRing, base: &str) -> String {
    let mut p = base.to_string();
    while ring
        .names()
        .iter()
        .any(|n| n.starts_with(&p) && n[p.len()..].chars().all(|c| c.is_ascii_digit()))
    {
        p.push_str(base);
    }
    p
}

/// Decides whether `A ⊗_{A_0} B_0 → B` is an isomorphism.
pub fn is_strongly_equivariant(phi: &GradedRingMap) -> Result<StrongVerdict> {
    let a = &phi.source;
    let b = &phi.target;
    let q = quotient_morphism(phi)?;
    let n = a.nvars();
    let m = q.target.len();
    let field = a.field();
    let prefix = fresh_prefix(a, "v");

    let mut vars = a.vars();
    for j in 0..m {
        vars.push((format!("{prefix}{}", j + 1), a.group().zero()));
    }
    let lift_t: Vec<usize> = (0..n).collect();
    let lift_v: Vec<usize> = (n..n + m).collect();
    let mut rels: Vec<Polynomial> = a
        .relations()
        .generators()
        .iter()
        .map(|r| r.rename(n + m, &lift_t))
        .collect();
    rels.extend(q.target.relations.generators().iter().map(|r| r.rename(n + m, &lift_v)));
    for (g, e) in q.source.generators.iter().zip(&q.images) {
        rels.push(&g.rename(n + m, &lift_t) - &e.rename(n + m, &lift_v));
    }
    let tensor = GradedRing::new(field, a.group().clone(), vars, rels)?;

    let mut to_b: Vec<Polynomial> = phi.images.clone();
    to_b.extend(q.target.generators.iter().cloned());

    for s in 0..b.nvars() {
        if subalgebra_membership(&b.var(s), &to_b, b.relations())?.is_none() {
            return Ok(StrongVerdict {
                holds: false,
                witness: Some(StrongWitness::Unreached(b.names()[s].clone())),
                tensor,
            });
        }
    }
    let kernel = ringmap_kernel(&to_b, b.relations())?;
    for g in kernel.groebner_basis(MonomialOrder::Grevlex).iter() {
        if !tensor.relations().contains(g)? {
            let witness = Some(StrongWitness::Kernel(tensor.show(&tensor.normal_form(g)?)));
            return Ok(StrongVerdict {
                holds: false,
                witness,
                tensor,
            });
        }
    }
    Ok(StrongVerdict {
        holds: true,
        witness: None,
        tensor,
    })
}

#[derive(Clone, Debug)]
pub struct PointwiseInert {
    pub holds: bool,
    pub base_point: RationalPoint,
    pub target_special: bool,
    pub source_special: bool,
    /// `L_{x'}` and `L_x`.
    pub target_label: Subgroup,
    pub source_label: Subgroup,
}

/// Special orbits go to special orbits at `x'`, and `G_{x'} = G_x`.
pub fn pointwise_inert_at(phi: &GradedRingMap, xp: &RationalPoint) -> Result<PointwiseInert> {
    let x = phi.image_point(xp)?;
    let target_label = support_subgroup(&phi.target, xp)?;
    let source_label = support_subgroup(&phi.source, &x)?;
    if !source_label.is_subgroup_of(&target_label)? {
        return Err(Error::Internal(format!(
            "support subgroup {source_label} of the image is not inside {target_label}"
        )));
    }
    let target_special = is_special(&phi.target, xp)?;
    let source_special = is_special(&phi.source, &x)?;
    let holds = (!target_special || source_special) && source_label == target_label;
    Ok(PointwiseInert {
        holds,
        base_point: x,
        target_special,
        source_special,
        target_label,
        source_label,
    })
}

/// The ideal of the fiber over `x` in the polynomial ring of `B`.
pub fn fiber_ideal(phi: &GradedRingMap, x: &RationalPoint) -> Result<Ideal> {
    let b = &phi.target;
    let extra = phi
        .images
        .iter()
        .zip(x.coords())
        .map(|(p, c)| p - &Polynomial::constant(b.field(), b.nvars(), c.clone()));
    b.relations().extend(extra)
}

#[derive(Clone, Debug)]
pub struct FiberwiseInert {
    pub holds: bool,
    /// A variable of nonzero degree in `L/L_x` that survives in the fiber.
    pub witness: Option<String>,
}

/// The stabilizer `G_x` acts trivially on the fiber over `x`: every variable
/// of `B` whose degree is nonzero in `L/L_x` vanishes on the fiber.
pub fn fiberwise_inert_over(phi: &GradedRingMap, x: &RationalPoint) -> Result<FiberwiseInert> {
    let a = &phi.source;
    let b = &phi.target;
    let label = support_subgroup(a, x)?;
    let fiber = fiber_ideal(phi, x)?;
    for s in 0..b.nvars() {
        if label.contains(&b.degrees()[s])? {
            continue;
        }
        if !fiber.contains(&b.var(s))? {
            return Ok(FiberwiseInert {
                holds: false,
                witness: Some(b.names()[s].clone()),
            });
        }
    }
    Ok(FiberwiseInert {
        holds: true,
        witness: None,
    })
}

#[derive(Clone, Debug)]
pub struct ProbeVerdict {
    pub point: RationalPoint,
    pub base_point: RationalPoint,
    pub special: bool,
    pub pointwise: bool,
    pub fiberwise: bool,
    pub h1_trivially_graded: bool,
}

impl ProbeVerdict {
    pub fn satisfied(&self) -> bool {
        self.pointwise && self.fiberwise && self.h1_trivially_graded
    }
}

/// Per-probe checks of the cotangent criterion. A positive aggregate only
/// speaks for the supplied probes.
#[derive(Clone, Debug)]
pub struct LunaVerdict {
    pub probes: Vec<ProbeVerdict>,
    pub criterion_holds: bool,
}

pub fn luna_verdict(phi: &GradedRingMap, probes: &[RationalPoint]) -> Result<LunaVerdict> {
    let data = CotangentData::new(phi)?;
    let probes = probes
        .par_iter()
        .map(|xp| {
            let pw = pointwise_inert_at(phi, xp)?;
            let fw = fiberwise_inert_over(phi, &pw.base_point)?;
            let cot = data.at(xp)?;
            Ok(ProbeVerdict {
                point: xp.clone(),
                base_point: pw.base_point.clone(),
                special: pw.target_special,
                pointwise: pw.holds,
                fiberwise: fw.holds,
                h1_trivially_graded: cot.h1_trivially_graded(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let criterion_holds = probes.iter().all(ProbeVerdict::satisfied);
    Ok(LunaVerdict {
        probes,
        criterion_holds,
    })
}

/// All points of `B` with coordinates drawn from `values`, in lexicographic
/// order of value indices.
pub fn grid_probes(ring: &GradedRing, values: &[i64]) -> Result<Vec<RationalPoint>> {
    let n = ring.nvars();
    let total = (values.len() as f64).powi(n as i32);
    if total > 1e6 {
        return Err(Error::Unsupported(format!("{total} grid probes requested")));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let coords: Vec<Coeff> = idx.iter().map(|&k| ring.field().from_i64(values[k])).collect();
        if let Ok(p) = RationalPoint::new(ring, coords) {
            out.push(p);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Probes used when none are supplied: grid points over `{0, 1, -1}` whose
/// orbits are special.
pub fn default_probes(ring: &GradedRing) -> Result<Vec<RationalPoint>> {
    let mut out = Vec::new();
    for p in grid_probes(ring, &[0, 1, -1])? {
        if is_special(ring, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothReport {
    pub jacobian_rank: usize,
    pub fiber_dimension: usize,
    pub relative_variables: usize,
    pub smooth: bool,
    pub etale: bool,
}

/// Jacobian criterion at `x'`: `rank + dim(fiber) = #variables of B`. The
/// fiber dimension is that of the whole fiber over `x`, which agrees with the
/// local dimension when the fiber is equidimensional.
pub fn smoothness_at(phi: &GradedRingMap, xp: &RationalPoint) -> Result<SmoothReport> {
    let b = &phi.target;
    let x = phi.image_point(xp)?;
    let fiber = fiber_ideal(phi, &x)?;
    let fiber_dimension = fiber
        .krull_dimension()
        .ok_or_else(|| Error::Internal("the fiber through a point is empty".into()))?;
    let mut rows: Vec<&Polynomial> = phi.images.iter().collect();
    rows.extend(b.relations().generators());
    let jac: Vec<Vec<Coeff>> = rows
        .iter()
        .map(|g| {
            (0..b.nvars())
                .map(|j| g.derivative(j).eval(xp.coords()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let jacobian_rank = linalg::rank(&jac);
    let p = b.nvars();
    let smooth = jacobian_rank + fiber_dimension == p;
    Ok(SmoothReport {
        jacobian_rank,
        fiber_dimension,
        relative_variables: p,
        smooth,
        etale: smooth && fiber_dimension == 0,
    })
}

pub fn smooth_at(phi: &GradedRingMap, xp: &RationalPoint) -> Result<bool> {
    Ok(smoothness_at(phi, xp)?.smooth)
}

pub fn etale_at(phi: &GradedRingMap, xp: &RationalPoint) -> Result<bool> {
    Ok(smoothness_at(phi, xp)?.etale)
}

/// Base change of `φ: A → B` along `ψ: A → A'`: the map `A' → A' ⊗_A B`.
/// Variables of `B` whose names clash with `A'` get a `_b` suffix.
pub fn base_change(phi: &GradedRingMap, psi: &GradedRingMap) -> Result<GradedRingMap> {
    if psi.source.names() != phi.source.names() || psi.source.degrees() != phi.source.degrees() {
        return Err(Error::AmbientMismatch(
            "base change along a map with a different source".into(),
        ));
    }
    let ap = &psi.target;
    let b = &phi.target;
    let (na, nb) = (ap.nvars(), b.nvars());
    let mut vars = ap.vars();
    for (name, d) in b.vars() {
        let mut name = name;
        while vars.iter().any(|(n, _)| *n == name) {
            name.push_str("_b");
        }
        vars.push((name, d));
    }
    let lift_a: Vec<usize> = (0..na).collect();
    let lift_b: Vec<usize> = (na..na + nb).collect();
    let mut rels: Vec<Polynomial> = ap
        .relations()
        .generators()
        .iter()
        .map(|r| r.rename(na + nb, &lift_a))
        .collect();
    rels.extend(b.relations().generators().iter().map(|r| r.rename(na + nb, &lift_b)));
    for (f, g) in psi.images.iter().zip(&phi.images) {
        let d = &f.rename(na + nb, &lift_a) - &g.rename(na + nb, &lift_b);
        if !d.is_zero() {
            rels.push(d);
        }
    }
    let product = Arc::new(GradedRing::new(ap.field(), ap.group().clone(), vars, rels)?);
    let images = (0..na).map(|i| product.var(i)).collect();
    GradedRingMap::new(ap.clone(), product, images)
}
