//! Ideals in polynomial rings: Gröbner bases, membership, elimination,
//! kernels of ring maps, subalgebra membership, syzygies and dimension.

mod engine;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::poly::{BaseField, Monomial, MonomialOrder, Polynomial};

use engine::Sparse;

/// An ideal of `k[x_1..x_n]` given by generators. Gröbner bases are computed
/// on demand and cached per monomial order.
pub struct Ideal {
    field: BaseField,
    nvars: usize,
    generators: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            field: self.field,
            nvars: self.nvars,
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("field", &self.field)
            .field("nvars", &self.nvars)
            .field("generators", &self.generators)
            .finish()
    }
}

fn check_ambient(field: BaseField, nvars: usize, p: &Polynomial) -> Result<()> {
    if p.field() != field || p.nvars() != nvars {
        return Err(Error::AmbientMismatch(format!(
            "polynomial over {} in {} variables used in a ring over {} in {} variables",
            p.field(),
            p.nvars(),
            field,
            nvars
        )));
    }
    Ok(())
}

fn to_sparse(ps: &[Polynomial], order: MonomialOrder) -> Vec<Sparse> {
    ps.iter()
        .filter(|p| !p.is_zero())
        .map(|p| Sparse::from_poly(p, order))
        .collect()
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(field: BaseField, nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            check_ambient(field, nvars, g)?;
        }
        Ok(Ideal {
            field,
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn zero(field: BaseField, nvars: usize) -> Self {
        Ideal::new(field, nvars, Vec::new()).expect("no generators")
    }

    pub fn unit(field: BaseField, nvars: usize) -> Self {
        Ideal::new(field, nvars, vec![Polynomial::one(field, nvars)]).expect("constant")
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced Gröbner basis: monic, sorted by ascending leading monomial.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Arc<Vec<Polynomial>> {
        if let Some(gb) = self.cache.lock().unwrap().get(&order) {
            return gb.clone();
        }
        let gb = engine::groebner(&to_sparse(&self.generators, order), order);
        let gb: Arc<Vec<Polynomial>> = Arc::new(gb.iter().map(|g| g.to_poly(self.field, self.nvars)).collect());
        self.cache.lock().unwrap().insert(order, gb.clone());
        gb
    }

    pub fn normal_form(&self, p: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
        check_ambient(self.field, self.nvars, p)?;
        let gb = self.groebner_basis(order);
        let basis = to_sparse(&gb, order);
        let all: Vec<usize> = (0..basis.len()).collect();
        let r = engine::reduce(&Sparse::from_poly(p, order), &basis, &all, order, None);
        Ok(r.to_poly(self.field, self.nvars))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p, MonomialOrder::Grevlex)?.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.groebner_basis(MonomialOrder::Grevlex);
        gb.len() == 1 && gb[0].is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    fn same_ambient(&self, other: &Ideal) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::AmbientMismatch(format!(
                "ideals over {} in {} variables and over {} in {} variables",
                self.field, self.nvars, other.field, other.nvars
            )));
        }
        Ok(())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.same_ambient(other)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ambient(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(self.field, self.nvars, gens)
    }

    /// The ideal with extra generators appended.
    pub fn extend(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Ideal::new(self.field, self.nvars, gens)
    }

    /// Reindexes variables: variable `i` becomes variable `index[i]` of a
    /// ring with `nvars` variables.
    pub fn rename(&self, nvars: usize, index: &[usize]) -> Ideal {
        Ideal::new(
            self.field,
            nvars,
            self.generators.iter().map(|g| g.rename(nvars, index)).collect(),
        )
        .expect("renamed generators share the ambient")
    }

    /// `I ∩ k[keep]`, as an ideal of the same ring generated by polynomials
    /// in the kept variables only.
    pub fn eliminate(&self, keep: &[usize]) -> Ideal {
        let (elim, perm) = self.elimination_permutation(keep);
        let inverse = inverse_permutation(&perm);
        let kept = eliminate_first(&self.rename(self.nvars, &perm), elim);
        Ideal::new(
            self.field,
            self.nvars,
            kept.iter().map(|g| g.rename(self.nvars, &inverse)).collect(),
        )
        .expect("same ambient")
    }

    /// `I ∩ k[keep]` with the kept variables renumbered `0..keep.len()` in the
    /// given order.
    pub fn eliminate_to(&self, keep: &[usize]) -> Ideal {
        let (elim, perm) = self.elimination_permutation(keep);
        let kept = eliminate_first(&self.rename(self.nvars, &perm), elim);
        let m = keep.len();
        let index: Vec<usize> = (0..self.nvars).map(|i| i.saturating_sub(elim)).collect();
        Ideal::new(self.field, m, kept.iter().map(|g| g.rename(m, &index)).collect()).expect("kept variables only")
    }

    /// Sends eliminated variables to the front (in index order) and kept
    /// variables after them (in the order of `keep`).
    fn elimination_permutation(&self, keep: &[usize]) -> (usize, Vec<usize>) {
        let elim: Vec<usize> = (0..self.nvars).filter(|i| !keep.contains(i)).collect();
        let mut perm = vec![0; self.nvars];
        for (pos, &v) in elim.iter().enumerate() {
            perm[v] = pos;
        }
        for (pos, &v) in keep.iter().enumerate() {
            perm[v] = elim.len() + pos;
        }
        (elim.len(), perm)
    }

    /// Dimension of `k[x]/I`; `None` when `I` is the unit ideal.
    pub fn krull_dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let gb = self.groebner_basis(MonomialOrder::Grevlex);
        let leads: Vec<Vec<usize>> = gb
            .iter()
            .map(|g| g.leading_term(MonomialOrder::Grevlex).unwrap().0.support().collect())
            .collect();
        let mut best = 0;
        let mut chosen = Vec::new();
        max_independent(0, self.nvars, &leads, &mut chosen, &mut best);
        Some(best)
    }
}

fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Basis elements free of the first `k` variables, for a block order.
fn eliminate_first(ideal: &Ideal, k: usize) -> Vec<Polynomial> {
    if k == 0 {
        return ideal.groebner_basis(MonomialOrder::Grevlex).to_vec();
    }
    ideal
        .groebner_basis(MonomialOrder::Block(k))
        .iter()
        .filter(|g| g.variables().iter().all(|&v| v >= k))
        .cloned()
        .collect()
}

/// A set `S` of variables is independent when no leading monomial has its
/// support inside `S`.
fn max_independent(next: usize, n: usize, leads: &[Vec<usize>], chosen: &mut Vec<usize>, best: &mut usize) {
    if chosen.len() + (n - next) <= *best {
        return;
    }
    if next == n {
        *best = chosen.len();
        return;
    }
    chosen.push(next);
    let ok = leads.iter().all(|s| !s.iter().all(|v| chosen.contains(v)));
    if ok {
        max_independent(next + 1, n, leads, chosen, best);
    }
    chosen.pop();
    max_independent(next + 1, n, leads, chosen, best);
}

/// Ring `k[t_1..t_n, u_1..u_m]` holding `target_relations` and the graph
/// relations `u_j - images_j`.
fn graph_ideal(images: &[Polynomial], target_relations: &Ideal) -> Result<Ideal> {
    let n = target_relations.nvars();
    let field = target_relations.field();
    for p in images {
        check_ambient(field, n, p)?;
    }
    let m = images.len();
    let lift: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = target_relations
        .generators()
        .iter()
        .map(|g| g.rename(n + m, &lift))
        .collect();
    for (j, p) in images.iter().enumerate() {
        gens.push(&Polynomial::var(field, n + m, n + j) - &p.rename(n + m, &lift));
    }
    Ideal::new(field, n + m, gens)
}

/// Kernel of `k[u_1..u_m] → k[t]/target_relations`, `u_j ↦ images_j`.
pub fn ringmap_kernel(images: &[Polynomial], target_relations: &Ideal) -> Result<Ideal> {
    let n = target_relations.nvars();
    let m = images.len();
    let graph = graph_ideal(images, target_relations)?;
    let keep: Vec<usize> = (n..n + m).collect();
    Ok(graph.eliminate_to(&keep))
}

/// An expression of `p` as a polynomial in `gens` modulo `relations`, in the
/// ring `k[u_1..u_m]`, when one exists.
pub fn subalgebra_membership(p: &Polynomial, gens: &[Polynomial], relations: &Ideal) -> Result<Option<Polynomial>> {
    let n = relations.nvars();
    let m = gens.len();
    check_ambient(relations.field(), n, p)?;
    let graph = graph_ideal(gens, relations)?;
    let lift: Vec<usize> = (0..n).collect();
    let r = graph.normal_form(&p.rename(n + m, &lift), MonomialOrder::Block(n))?;
    if r.variables().iter().any(|&v| v < n) {
        return Ok(None);
    }
    let index: Vec<usize> = (0..n + m).map(|i| i.saturating_sub(n)).collect();
    Ok(Some(r.rename(m, &index)))
}

/// Columns `s` with `Σ s_i g_i = 0` in the quotient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct SyzygyModule {
    pub rank: usize,
    pub columns: Vec<Vec<Polynomial>>,
}

impl SyzygyModule {
    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }
}

/// Syzygies of `gens` over `k[x]/modulo`: syzygies of `gens ∪ modulo` over
/// the polynomial ring, truncated to the first `gens.len()` coordinates.
pub fn syzygies(gens: &[Polynomial], modulo: &Ideal) -> Result<SyzygyModule> {
    let field = modulo.field();
    let n = modulo.nvars();
    for g in gens {
        check_ambient(field, n, g)?;
    }
    let p = gens.len();
    let mut all: Vec<Polynomial> = gens.to_vec();
    all.extend(modulo.generators().iter().cloned());
    let order = MonomialOrder::Grevlex;
    let sparse: Vec<Sparse> = all.iter().map(|g| Sparse::from_poly(g, order)).collect();
    let traced = engine::groebner_traced(&sparse, order, n);
    let mut columns: Vec<Vec<Polynomial>> = Vec::new();
    for syz in traced.syzygies {
        let col: Vec<Polynomial> = syz[..p].iter().map(|s| s.to_poly(field, n)).collect();
        if col.iter().all(|c| c.is_zero()) {
            continue;
        }
        // entries are only defined modulo the relations
        let col: Vec<Polynomial> = col
            .iter()
            .map(|c| modulo.normal_form(c, order))
            .collect::<Result<_>>()?;
        if col.iter().all(|c| c.is_zero()) || columns.iter().any(|d| is_multiple(&col, d)) {
            continue;
        }
        columns.retain(|d| !is_multiple(d, &col));
        columns.push(col);
    }
    Ok(SyzygyModule { rank: p, columns })
}

/// Exact quotient `a / b` in the polynomial ring, if `b` divides `a`.
fn exact_quotient(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    let order = MonomialOrder::Grevlex;
    let basis = vec![Sparse::from_poly(b, order)];
    let mut trace = vec![Sparse::zero()];
    let r = engine::reduce(&Sparse::from_poly(a, order), &basis, &[0], order, Some(&mut trace));
    r.is_zero().then(|| trace[0].to_poly(a.field(), a.nvars()))
}

/// True when `c = q * d` for a single polynomial `q`.
fn is_multiple(c: &[Polynomial], d: &[Polynomial]) -> bool {
    let Some(k) = d.iter().position(|e| !e.is_zero()) else {
        return false;
    };
    let Some(q) = exact_quotient(&c[k], &d[k]) else {
        return false;
    };
    c.iter().zip(d).all(|(ci, di)| *ci == &q * di)
}

/// True when every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis(basis: &[Polynomial], order: MonomialOrder) -> bool {
    engine::satisfies_buchberger(&to_sparse(basis, order), order)
}

/// The leading monomial of each polynomial.
pub fn leading_monomials(ps: &[Polynomial], order: MonomialOrder) -> Vec<Monomial> {
    ps.iter()
        .filter_map(|p| p.leading_term(order).map(|(m, _)| m.clone()))
        .collect()
}
