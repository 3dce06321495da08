//! Buchberger's algorithm on sorted term vectors.

use std::cmp::Ordering;

use crate::poly::{BaseField, Coeff, Monomial, MonomialOrder, Polynomial};

/// Terms sorted strictly descending under the active order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Sparse {
    pub terms: Vec<(Monomial, Coeff)>,
}

impl Sparse {
    pub fn zero() -> Self {
        Sparse { terms: Vec::new() }
    }

    pub fn from_poly(p: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Coeff)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Sparse { terms }
    }

    pub fn to_poly(&self, field: BaseField, nvars: usize) -> Polynomial {
        Polynomial::from_terms(field, nvars, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Coeff {
        &self.terms[0].1
    }

    pub fn scale(&mut self, c: &Coeff) {
        for t in &mut self.terms {
            t.1 = &t.1 * c;
        }
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, c: &Coeff, m: &Monomial, other: &Sparse, order: MonomialOrder) -> Sparse {
        Sparse {
            terms: merge_scaled(&self.terms, c, m, &other.terms, order),
        }
    }
}

/// Merges `a + c * m * b` where both inputs are sorted descending.
fn merge_scaled(
    a: &[(Monomial, Coeff)],
    c: &Coeff,
    m: &Monomial,
    b: &[(Monomial, Coeff)],
    order: MonomialOrder,
) -> Vec<(Monomial, Coeff)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(bm, bc)| (bm.mul(m), bc * c)).peekable();
    while i < a.len() || bi.peek().is_some() {
        let ord = match (a.get(i), bi.peek()) {
            (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => out.push(bi.next().unwrap()),
            Ordering::Equal => {
                let (mm, cc) = bi.next().unwrap();
                let s = &a[i].1 + &cc;
                if !s.is_zero() {
                    out.push((mm, s));
                }
                i += 1;
            }
        }
    }
    out
}

/// Full reduction of `p` by `basis` (indices in `active`). When `trace` is
/// given, `trace[k]` accumulates the quotient by `basis[k]`, so that
/// `p = Σ trace[k] * basis[k] + remainder`.
pub(crate) fn reduce(
    p: &Sparse,
    basis: &[Sparse],
    active: &[usize],
    order: MonomialOrder,
    mut trace: Option<&mut Vec<Sparse>>,
) -> Sparse {
    let mut cur = p.terms.clone();
    let mut start = 0;
    let mut rem = Vec::new();
    while start < cur.len() {
        let (lm, lc) = (&cur[start].0, &cur[start].1);
        let divisor = active.iter().copied().find(|&k| basis[k].lm().divides(lm));
        match divisor {
            Some(k) => {
                let g = &basis[k];
                let q = g.lm().quotient_of(lm).expect("divides");
                let c = lc * &g.lc().inv();
                if let Some(tr) = trace.as_deref_mut() {
                    let single = Sparse {
                        terms: vec![(Monomial::one(q.nvars()), c.clone())],
                    };
                    tr[k] = tr[k].add_scaled(&c.field().one(), &q, &single, order);
                }
                cur = merge_scaled(&cur[start + 1..], &-&c, &q, &g.terms[1..], order);
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    Sparse { terms: rem }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pair {
    i: usize,
    j: usize,
}

fn pair_lcm(basis: &[Sparse], p: Pair) -> Monomial {
    basis[p.i].lm().lcm(basis[p.j].lm())
}

/// S-polynomial of `f`, `g` with the multipliers applied to each.
fn s_poly(f: &Sparse, g: &Sparse, order: MonomialOrder) -> (Sparse, (Coeff, Monomial), (Coeff, Monomial)) {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l).unwrap();
    let mg = g.lm().quotient_of(&l).unwrap();
    let cf = f.lc().inv();
    let cg = -&g.lc().inv();
    let s = Sparse::zero()
        .add_scaled(&cf, &mf, f, order)
        .add_scaled(&cg, &mg, g, order);
    (s, (cf, mf), (cg, mg))
}

/// Normal selection: smallest lcm under the order, then lowest indices.
fn select(pairs: &mut Vec<Pair>, basis: &[Sparse], order: MonomialOrder) -> Pair {
    let mut best = 0;
    for k in 1..pairs.len() {
        let a = pair_lcm(basis, pairs[k]);
        let b = pair_lcm(basis, pairs[best]);
        let ord = order
            .cmp(&a, &b)
            .then_with(|| (pairs[k].j, pairs[k].i).cmp(&(pairs[best].j, pairs[best].i)));
        if ord == Ordering::Less {
            best = k;
        }
    }
    pairs.remove(best)
}

/// Gebauer–Möller update after adding `basis[h]`.
fn update(pairs: &mut Vec<Pair>, active: &mut Vec<usize>, basis: &[Sparse], h: usize) {
    let lh = basis[h].lm().clone();
    let mut candidates: Vec<usize> = active.clone();
    let mut kept: Vec<usize> = Vec::new();
    while let Some(g1) = candidates.first().copied() {
        candidates.remove(0);
        let l1 = lh.lcm(basis[g1].lm());
        let coprime = lh.coprime(basis[g1].lm());
        let dominated = candidates
            .iter()
            .chain(kept.iter())
            .any(|&g2| lh.lcm(basis[g2].lm()).divides(&l1));
        if coprime || !dominated {
            kept.push(g1);
        }
    }
    let new_pairs: Vec<Pair> = kept
        .into_iter()
        .filter(|&g| !lh.coprime(basis[g].lm()))
        .map(|g| Pair { i: g, j: h })
        .collect();

    pairs.retain(|p| {
        let l = pair_lcm(basis, *p);
        !(lh.divides(&l) && lh.lcm(basis[p.i].lm()) != l && lh.lcm(basis[p.j].lm()) != l)
    });
    pairs.extend(new_pairs);

    active.retain(|&g| !lh.divides(basis[g].lm()));
    active.push(h);
}

/// Reduced Gröbner basis, monic, sorted by ascending leading monomial.
pub(crate) fn groebner(gens: &[Sparse], order: MonomialOrder) -> Vec<Sparse> {
    let mut basis: Vec<Sparse> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in gens {
        let r = reduce(g, &basis, &active, order, None);
        if r.is_zero() {
            continue;
        }
        let mut r = r;
        let inv = r.lc().inv();
        r.scale(&inv);
        basis.push(r);
        let h = basis.len() - 1;
        update(&mut pairs, &mut active, &basis, h);
    }

    while !pairs.is_empty() {
        let p = select(&mut pairs, &basis, order);
        let (s, _, _) = s_poly(&basis[p.i], &basis[p.j], order);
        let r = reduce(&s, &basis, &active, order, None);
        if r.is_zero() {
            continue;
        }
        let mut r = r;
        let inv = r.lc().inv();
        r.scale(&inv);
        basis.push(r);
        let h = basis.len() - 1;
        update(&mut pairs, &mut active, &basis, h);
    }

    interreduce(&basis, &active, order)
}

fn interreduce(basis: &[Sparse], active: &[usize], order: MonomialOrder) -> Vec<Sparse> {
    // minimal: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<usize> = Vec::new();
    for &i in active {
        let dominated = active
            .iter()
            .any(|&j| j != i && basis[j].lm().divides(basis[i].lm()) && (basis[j].lm() != basis[i].lm() || j < i));
        if !dominated {
            minimal.push(i);
        }
    }
    let mut out: Vec<Sparse> = Vec::new();
    for &i in &minimal {
        let others: Vec<usize> = minimal.iter().copied().filter(|&j| j != i).collect();
        let head = Sparse {
            terms: vec![basis[i].terms[0].clone()],
        };
        let tail = Sparse {
            terms: basis[i].terms[1..].to_vec(),
        };
        let tail = reduce(&tail, basis, &others, order, None);
        let mut g = Sparse {
            terms: head.terms.into_iter().chain(tail.terms).collect(),
        };
        let inv = g.lc().inv();
        g.scale(&inv);
        out.push(g);
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out
}

/// Syzygies of the inputs found while tracing a Gröbner basis computation,
/// one coordinate vector per entry.
pub(crate) struct Traced {
    pub syzygies: Vec<Vec<Sparse>>,
}

fn row_combine(acc: &mut [Sparse], c: &Coeff, m: &Monomial, row: &[Sparse], order: MonomialOrder) {
    for (a, r) in acc.iter_mut().zip(row) {
        if !r.is_zero() {
            *a = a.add_scaled(c, m, r, order);
        }
    }
}

/// Buchberger on all pairs with full quotient tracking. Every S-pair that
/// reduces to zero yields a syzygy of the inputs; the remaining generators of
/// the syzygy module come from re-expressing each input in the basis.
pub(crate) fn groebner_traced(gens: &[Sparse], order: MonomialOrder, nvars: usize) -> Traced {
    let m = gens.len();
    let one = |f: BaseField| f.one();
    let unit_mon = Monomial::one(nvars);
    let mut basis: Vec<Sparse> = Vec::new();
    let mut rows: Vec<Vec<Sparse>> = Vec::new();
    let mut syzygies: Vec<Vec<Sparse>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // inputs enter the basis unreduced so their rows stay unit vectors
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            let mut e = vec![Sparse::zero(); m];
            e[i] = Sparse {
                terms: vec![(unit_mon.clone(), field_of(gens).one())],
            };
            syzygies.push(e);
            continue;
        }
        let mut row = vec![Sparse::zero(); m];
        row[i] = Sparse {
            terms: vec![(unit_mon.clone(), one(g.lc().field()))],
        };
        basis.push(g.clone());
        rows.push(row);
        let h = basis.len() - 1;
        for k in 0..h {
            pairs.push(Pair { i: k, j: h });
        }
    }

    while !pairs.is_empty() {
        let p = select(&mut pairs, &basis, order);
        let (s, (cf, mf), (cg, mg)) = s_poly(&basis[p.i], &basis[p.j], order);
        let all: Vec<usize> = (0..basis.len()).collect();
        let mut quot = vec![Sparse::zero(); basis.len()];
        let r = reduce(&s, &basis, &all, order, Some(&mut quot));
        // combination of inputs equal to s - Σ quot_k basis_k = r
        let mut comb = vec![Sparse::zero(); m];
        row_combine(&mut comb, &cf, &mf, &rows[p.i], order);
        row_combine(&mut comb, &cg, &mg, &rows[p.j], order);
        for (k, q) in quot.iter().enumerate() {
            for (c_m, c_c) in &q.terms {
                row_combine(&mut comb, &-c_c, c_m, &rows[k], order);
            }
        }
        if r.is_zero() {
            if comb.iter().any(|c| !c.is_zero()) {
                syzygies.push(comb);
            }
            continue;
        }
        let inv = r.lc().inv();
        let mut r = r;
        r.scale(&inv);
        for c in &mut comb {
            c.scale(&inv);
        }
        basis.push(r);
        rows.push(comb);
        let h = basis.len() - 1;
        for k in 0..h {
            pairs.push(Pair { i: k, j: h });
        }
    }

    // e_i - Σ_k b_ki rows_k for each input f_i = Σ_k b_ki basis_k
    let all: Vec<usize> = (0..basis.len()).collect();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut quot = vec![Sparse::zero(); basis.len()];
        let r = reduce(g, &basis, &all, order, Some(&mut quot));
        debug_assert!(r.is_zero());
        let mut comb = vec![Sparse::zero(); m];
        comb[i] = Sparse {
            terms: vec![(unit_mon.clone(), g.lc().field().one())],
        };
        for (k, q) in quot.iter().enumerate() {
            for (c_m, c_c) in &q.terms {
                row_combine(&mut comb, &-c_c, c_m, &rows[k], order);
            }
        }
        if comb.iter().any(|c| !c.is_zero()) {
            syzygies.push(comb);
        }
    }

    Traced { syzygies }
}

fn field_of(gens: &[Sparse]) -> BaseField {
    gens.iter()
        .find(|g| !g.is_zero())
        .map(|g| g.lc().field())
        .unwrap_or(BaseField::Rational)
}

/// True if every S-polynomial of `basis` reduces to zero.
pub(crate) fn satisfies_buchberger(basis: &[Sparse], order: MonomialOrder) -> bool {
    let all: Vec<usize> = (0..basis.len()).collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (s, _, _) = s_poly(&basis[i], &basis[j], order);
            if !reduce(&s, basis, &all, order, None).is_zero() {
                return false;
            }
        }
    }
    true
}
