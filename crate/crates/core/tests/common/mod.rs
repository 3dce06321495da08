#![allow(dead_code)]

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use lunaquot::abelian::{GradingGroup, GroupElement, Subgroup};
use lunaquot::action::{cut_ideal_generators, fixed_locus, Sign};
use lunaquot::cli::{parse_session, Session};
use lunaquot::gradedalg::{
    fixed_point_max_ideal_generators, invariant_subring, minimal_homogeneous_generators, GradedRing, RationalPoint,
};
use lunaquot::groebner::{subalgebra_membership, Ideal};
use lunaquot::lattice::{kernel_hilbert_basis, DegreeSystem};
use lunaquot::luna::{cotangent_fiber, default_probes, smoothness_at, GradedRingMap};
use lunaquot::poly::{Coeff, MonomialOrder, Polynomial};
use rand::Rng;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e(err: lunaquot::Error) -> String {
    err.to_string()
}

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Every fixture session, sorted by file name.
pub fn fixtures() -> Vec<(String, Session)> {
    let mut paths: Vec<PathBuf> = fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let s = parse_session(&fs::read_to_string(&p).unwrap()).unwrap();
            (p.file_stem().unwrap().to_string_lossy().into_owned(), s)
        })
        .collect()
}

pub fn fixture(name: &str) -> Session {
    parse_session(&fs::read_to_string(fixture_dir().join(format!("{name}.lq"))).unwrap()).unwrap()
}

// ---- Hilbert bases against a box search ----

pub fn random_system<R: Rng>(rng: &mut R) -> DegreeSystem {
    let rank = rng.gen_range(0..=2);
    let torsion = rng.gen_range(1..=4i64);
    let group = if torsion > 1 {
        GradingGroup::new(rank, vec![torsion.into()]).unwrap()
    } else {
        GradingGroup::free(rank)
    };
    let n = rng.gen_range(1..=4);
    let degrees = (0..n)
        .map(|_| {
            let c: Vec<i64> = (0..group.arity()).map(|_| rng.gen_range(-5..=5)).collect();
            group.element(&c).unwrap()
        })
        .collect();
    DegreeSystem::new(group, degrees).unwrap()
}

fn box_points(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=bound).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out
}

fn below(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(p, q)| p <= q)
}

fn decomposes(a: &[u32], basis: &[Vec<u32>], memo: &mut HashMap<Vec<u32>, bool>) -> bool {
    if a.iter().all(|&c| c == 0) {
        return true;
    }
    if let Some(&v) = memo.get(a) {
        return v;
    }
    let v = basis.iter().any(|b| {
        below(b, a) && {
            let rest: Vec<u32> = a.iter().zip(b).map(|(p, q)| p - q).collect();
            decomposes(&rest, basis, memo)
        }
    });
    memo.insert(a.to_vec(), v);
    v
}

/// Soundness, minimality and completeness of the kernel Hilbert basis, with
/// completeness checked on every kernel vector in `[0, bound]^n`.
pub fn check_hilbert_basis(sys: &DegreeSystem, bound: u32) -> Check {
    let hb = kernel_hilbert_basis(sys).map_err(e)?;
    let zero = |a: &[u32]| sys.group().combination(a, sys.degrees()).unwrap().is_zero();
    for h in &hb {
        ensure!(h.iter().any(|&c| c > 0), "zero vector in basis");
        ensure!(zero(h), "{h:?} is not in the kernel");
        for s in box_points(h.len(), *h.iter().max().unwrap()) {
            if below(&s, h) && s != *h && s.iter().any(|&c| c > 0) && zero(&s) {
                ensure!(false, "{h:?} is the sum of {s:?} and another kernel vector");
            }
        }
    }
    let mut memo = HashMap::new();
    for a in box_points(sys.len(), bound) {
        if zero(&a) {
            ensure!(decomposes(&a, &hb, &mut memo), "{a:?} is not a sum of basis elements");
        }
    }
    Ok(())
}

// ---- minimal generators against subset search ----

/// Smallest subset of `gens` generating the same ideal modulo `m·(gens)`.
pub fn brute_min(a: &GradedRing, gens: &[Polynomial], x: &RationalPoint) -> usize {
    let m = fixed_point_max_ideal_generators(a, x).unwrap();
    let mm: Vec<Polynomial> = m.iter().flat_map(|u| gens.iter().map(move |g| u * g)).collect();
    let base = a.relations().extend(mm).unwrap();
    (0..=gens.len())
        .find(|&k| {
            (0u32..1 << gens.len())
                .filter(|s| s.count_ones() as usize == k)
                .any(|s| {
                    let sub = (0..gens.len()).filter(|i| s >> i & 1 == 1).map(|i| gens[i].clone());
                    let i = base.extend(sub).unwrap();
                    gens.iter().all(|g| i.contains(g).unwrap())
                })
        })
        .unwrap()
}

/// A random Z-graded instance: ring `k[x,y,w]`, `deg = (1, 1, 0)` or
/// `(1, 2, 0)`, and homogeneous generators at the origin.
pub fn random_mingens_instance<R: Rng>(rng: &mut R) -> (GradedRing, Vec<Polynomial>) {
    let dy = rng.gen_range(1..=2i64);
    let a = GradedRing::from_strings(
        lunaquot::poly::BaseField::Rational,
        GradingGroup::free(1),
        &[("x", &[1]), ("y", &[dy]), ("w", &[0])],
        &[],
    )
    .unwrap();
    let field = a.field();
    let count = rng.gen_range(1..=5);
    let mut gens = Vec::new();
    while gens.len() < count {
        let i = rng.gen_range(0..3u32);
        let j = rng.gen_range(0..3u32);
        let deg = i + j * dy as u32;
        let mut g = a.monomial(&[i, j, 0]);
        for _ in 0..rng.gen_range(0..3) {
            // another monomial of the same degree, times w^k
            let jj = rng.gen_range(0..=deg / dy as u32);
            let ii = deg - jj * dy as u32;
            let k = rng.gen_range(0..2u32);
            let c = field.from_i64(rng.gen_range(-2..=2));
            g = &g + &a.monomial(&[ii, jj, k]).scale(&c);
        }
        if !g.is_zero() {
            gens.push(g);
        }
    }
    (a, gens)
}

pub fn check_mingens(a: &GradedRing, gens: &[Polynomial]) -> Check {
    let o = RationalPoint::origin(a).map_err(e)?;
    let keep = minimal_homogeneous_generators(a, gens, &o).map_err(e)?;
    let want = brute_min(a, gens, &o);
    ensure!(
        keep.len() == want,
        "kept {} generators, subset search needs {want}",
        keep.len()
    );
    let mut rev: Vec<Polynomial> = gens.to_vec();
    rev.reverse();
    let again = minimal_homogeneous_generators(a, &rev, &o).map_err(e)?;
    ensure!(again.len() == want, "count depends on generator order");
    Ok(())
}

// ---- Gröbner bases of homogeneous ideals ----

pub fn check_homogeneous_basis(ring: &GradedRing, gens: &[Polynomial]) -> Check {
    let ideal = Ideal::new(ring.field(), ring.nvars(), gens.to_vec()).map_err(e)?;
    for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
        for g in ideal.groebner_basis(order).iter() {
            let h = ring.homogeneity(g).map_err(e)?;
            ensure!(h.is_homogeneous(), "basis element {} is not homogeneous", ring.show(g));
        }
    }
    Ok(())
}

// ---- invariants in two steps ----

/// `A^{L'⊕L''}` computed at once and as `(A^{L'})^{L''}` for `L = Z^2`,
/// `L'`, `L''` the two coordinate lines; the two subalgebras must agree.
pub fn check_two_step_invariants(a: &GradedRing) -> Check {
    ensure!(a.group() == &GradingGroup::free(2), "expects a Z^2-grading");
    let z = GradingGroup::free(1);
    let coord = |d: &GroupElement, k: usize| z.element_big(vec![d.coords()[k].clone()]).unwrap();
    let first = a
        .regrade(z.clone(), a.degrees().iter().map(|d| coord(d, 0)).collect())
        .map_err(e)?;
    let step1 = invariant_subring(&first).map_err(e)?;
    let mut vars = Vec::new();
    for (name, g) in step1.names.iter().zip(&step1.generators) {
        let d = a
            .degree_of(g, "generator")
            .map_err(e)?
            .unwrap_or_else(|| a.group().zero());
        vars.push((name.clone(), coord(&d, 1)));
    }
    let middle = GradedRing::new(a.field(), z, vars, step1.relation_basis()).map_err(e)?;
    let step2 = invariant_subring(&middle).map_err(e)?;
    let composite: Vec<Polynomial> = step2
        .generators
        .iter()
        .map(|g| g.substitute(&step1.generators))
        .collect::<lunaquot::Result<_>>()
        .map_err(e)?;
    let direct = invariant_subring(a).map_err(e)?;
    for g in &composite {
        ensure!(
            a.homogeneity(g).map_err(e)?.lies_in(&a.group().zero()),
            "{} is not invariant",
            a.show(g)
        );
        ensure!(
            subalgebra_membership(g, &direct.generators, a.relations())
                .map_err(e)?
                .is_some(),
            "{} is missing from the direct invariants",
            a.show(g)
        );
    }
    for g in &direct.generators {
        ensure!(
            subalgebra_membership(g, &composite, a.relations())
                .map_err(e)?
                .is_some(),
            "{} is missing from the two-step invariants",
            a.show(g)
        );
    }
    Ok(())
}

pub fn random_z2_ring<R: Rng>(rng: &mut R) -> GradedRing {
    let n = rng.gen_range(1..=4);
    let names = ["a", "b", "c", "d"];
    let degs: Vec<[i64; 2]> = (0..n).map(|_| [rng.gen_range(-2..=2), rng.gen_range(-2..=2)]).collect();
    let vars: Vec<(&str, &[i64])> = degs.iter().enumerate().map(|(i, d)| (names[i], &d[..])).collect();
    GradedRing::from_strings(lunaquot::poly::BaseField::Rational, GradingGroup::free(2), &vars, &[]).unwrap()
}

// ---- cut ideals under strongly equivariant maps ----

/// For a strongly equivariant map of `Z`-graded rings, `(A_-)·B = (B_-)` and
/// `(A_+)·B = (B_+)`.
pub fn check_cut_ideals(phi: &GradedRingMap) -> Check {
    let (a, b) = (phi.source(), phi.target());
    for sign in [Sign::Plus, Sign::Minus] {
        let pulled: Vec<Polynomial> = cut_ideal_generators(a, sign)
            .map_err(e)?
            .iter()
            .map(|g| phi.apply(g))
            .collect::<lunaquot::Result<_>>()
            .map_err(e)?;
        let extended = b.relations().extend(pulled).map_err(e)?;
        let own = b
            .relations()
            .extend(cut_ideal_generators(b, sign).map_err(e)?)
            .map_err(e)?;
        ensure!(extended.equals(&own).map_err(e)?, "cut ideals differ for {sign:?}");
    }
    Ok(())
}

// ---- fixed loci ----

/// Whether `Spec(ring)` is smooth at `x` by the Jacobian criterion, computed
/// as smoothness of the structure map from the ground field.
pub fn smooth_point(ring: &GradedRing, x: &RationalPoint) -> lunaquot::Result<bool> {
    let k = Arc::new(GradedRing::new(ring.field(), ring.group().clone(), vec![], vec![])?);
    let phi = GradedRingMap::new(k, Arc::new(ring.clone()), vec![])?;
    Ok(smoothness_at(&phi, x)?.smooth)
}

/// At every probed fixed point where `X` is smooth, `X^G` is smooth too.
pub fn check_smooth_fixed_locus(ring: &GradedRing) -> Check {
    let fixed = fixed_locus(ring, &Subgroup::zero(ring.group())).map_err(e)?;
    for x in default_probes(ring).map_err(e)? {
        if !x.is_fixed(ring) || !smooth_point(ring, &x).map_err(e)? {
            continue;
        }
        let coords: Vec<Coeff> = fixed
            .names()
            .iter()
            .map(|n| x.coords()[ring.index_of(n).unwrap()].clone())
            .collect();
        let y = RationalPoint::new(&fixed, coords).map_err(e)?;
        ensure!(
            smooth_point(&fixed, &y).map_err(e)?,
            "fixed locus singular at {}",
            y.show(&fixed)
        );
    }
    Ok(())
}

// ---- the group acting on points ----

/// The rational character value `t^a·(-1)^b` of a degree `(a, b)` of
/// `Z^r ⊕ (Z/2)^s`; `None` for other torsion.
fn character(group: &GradingGroup, t: &Coeff, d: &GroupElement) -> Option<Coeff> {
    let field = t.field();
    let mut v = field.one();
    for (i, c) in d.coords().iter().enumerate() {
        let c: i64 = c.try_into().ok()?;
        if i < group.free_rank() {
            let base = if c < 0 { t.inv() } else { t.clone() };
            v = &v * &base.pow(c.unsigned_abs() as u32);
        } else {
            if group.torsion()[i - group.free_rank()] != 2.into() {
                return None;
            }
            if c % 2 != 0 {
                v = -&v;
            }
        }
    }
    Some(v)
}

pub fn act(ring: &GradedRing, t: &Coeff, x: &RationalPoint) -> Option<RationalPoint> {
    let coords = x
        .coords()
        .iter()
        .zip(ring.degrees())
        .map(|(c, d)| Some(c * &character(ring.group(), t, d)?))
        .collect::<Option<Vec<_>>>()?;
    Some(RationalPoint::new(ring, coords).expect("the group preserves the relations"))
}

/// Probes moved by the group stay on `X'`, the map commutes with the
/// action, and the cotangent dimensions are constant along orbits.
pub fn check_orbit_invariance(phi: &GradedRingMap, t: &Coeff) -> Check {
    let (a, b) = (phi.source(), phi.target());
    for xp in default_probes(b).map_err(e)? {
        let Some(moved) = act(b, t, &xp) else { return Ok(()) };
        let lhs = phi.image_point(&moved).map_err(e)?;
        let rhs = act(a, t, &phi.image_point(&xp).map_err(e)?).unwrap();
        ensure!(lhs == rhs, "map does not commute with the action at {}", xp.show(b));
        let before = cotangent_fiber(phi, &xp).map_err(e)?;
        let after = cotangent_fiber(phi, &moved).map_err(e)?;
        ensure!(
            before.h0 == after.h0 && before.h1 == after.h1,
            "cotangent dimensions change along the orbit of {}",
            xp.show(b)
        );
    }
    Ok(())
}
