use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::abelian::{GradingGroup, GroupElement};
use crate::error::{Error, Result};

use super::field::{BaseField, Coeff};
use super::monomial::{Monomial, MonomialOrder};

/// A polynomial in `nvars` variables over a base field. Terms are keyed by
/// exponent vector; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: BaseField,
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

/// Result of a homogeneity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial lies in every graded piece.
    Any,
    Degree(GroupElement),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous)
    }

    /// True if the polynomial belongs to the graded piece of degree `d`.
    pub fn lies_in(&self, d: &GroupElement) -> bool {
        match self {
            Homogeneity::Any => true,
            Homogeneity::Degree(e) => e == d,
            Homogeneity::Inhomogeneous => false,
        }
    }
}

/// `φ(a) = Σ a_i deg(t_i)`.
pub fn monomial_degree(group: &GradingGroup, m: &Monomial, degrees: &[GroupElement]) -> Result<GroupElement> {
    group.combination(m.exponents(), degrees)
}

impl Polynomial {
    pub fn zero(field: BaseField, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: BaseField, nvars: usize, c: Coeff) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn one(field: BaseField, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: BaseField, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), field.one())
    }

    pub fn term(field: BaseField, m: Monomial, c: Coeff) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { field, nvars, terms }
    }

    pub fn monomial(field: BaseField, exponents: &[u32]) -> Self {
        Self::term(field, Monomial::new(exponents.to_vec()), field.one())
    }

    /// Builds a polynomial from terms, summing repeated monomials.
    pub fn from_terms(field: BaseField, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..self.nvars).filter(|&i| used[i]).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::AmbientMismatch(format!(
                "polynomials over {} and {}",
                self.field, other.field
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so the leading coefficient under `order` is one.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// Substitutes `images[i]` for variable `i`. All images share one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::AmbientMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let (field, nvars) = match images.first() {
            Some(p) => (p.field, p.nvars),
            None => (self.field, 0),
        };
        if field != self.field {
            return Err(Error::AmbientMismatch("substitution across fields".into()));
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); self.nvars];
        let mut out = Polynomial::zero(field, nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(field, nvars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::one(field, nvars));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().checked_mul(&images[i])?;
                    cache.push(next);
                }
                t = t.checked_mul(&cache[e as usize])?;
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// Re-embeds into a ring with `nvars` variables, sending variable `i`
    /// to variable `index[i]`.
    pub fn rename(&self, nvars: usize, index: &[usize]) -> Polynomial {
        assert_eq!(index.len(), self.nvars, "renaming map has wrong length");
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; nvars];
            for (i, &k) in m.exponents().iter().enumerate().filter(|(_, &k)| k > 0) {
                e[index[i]] += k;
            }
            (Monomial::new(e), c.clone())
        });
        Polynomial::from_terms(self.field, nvars, terms)
    }

    pub fn eval(&self, point: &[Coeff]) -> Result<Coeff> {
        if point.len() != self.nvars {
            return Err(Error::AmbientMismatch(format!(
                "point with {} coordinates for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Sets the listed variables to the given values, keeping the ambient.
    pub fn specialize(&self, values: &[(usize, Coeff)]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            let mut c = c.clone();
            for (i, v) in values {
                if e[*i] > 0 {
                    c = &c * &v.pow(e[*i]);
                    e[*i] = 0;
                }
            }
            (Monomial::new(e), c)
        });
        Polynomial::from_terms(self.field, self.nvars, terms)
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[var];
            if e == 0 {
                return None;
            }
            let mut ex = m.exponents().to_vec();
            ex[var] -= 1;
            Some((Monomial::new(ex), c * &self.field.from_i64(e as i64)))
        });
        Polynomial::from_terms(self.field, self.nvars, terms)
    }

    pub fn homogeneity(&self, group: &GradingGroup, degrees: &[GroupElement]) -> Result<Homogeneity> {
        let mut found: Option<GroupElement> = None;
        for m in self.terms.keys() {
            let d = monomial_degree(group, m, degrees)?;
            match &found {
                None => found = Some(d),
                Some(e) if *e == d => {}
                Some(_) => return Ok(Homogeneity::Inhomogeneous),
            }
        }
        Ok(match found {
            None => Homogeneity::Any,
            Some(d) => Homogeneity::Degree(d),
        })
    }

    /// `p = Σ_n p_n` with each `p_n` homogeneous of degree `n`.
    pub fn homogeneous_components(
        &self,
        group: &GradingGroup,
        degrees: &[GroupElement],
    ) -> Result<BTreeMap<GroupElement, Polynomial>> {
        let mut out: BTreeMap<GroupElement, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = monomial_degree(group, m, degrees)?;
            out.entry(d)
                .or_insert_with(|| Polynomial::zero(self.field, self.nvars))
                .add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Display with the given variable names, terms in grevlex order.
    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.sorted_terms(MonomialOrder::Grevlex).into_iter().enumerate() {
            let negative = c.is_negative_literal();
            let abs = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                let name = self.names.get(i).cloned().unwrap_or_else(|| format!("t{}", i + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on mismatched ambients; see [`Polynomial::checked_add`].
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}
