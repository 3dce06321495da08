//! Finitely presented algebras `A = k[t_1..t_n]/I` graded by a finitely
//! generated abelian group, with invariants, coinvariants, graded pieces and
//! local generator counts at fixed points.

use std::collections::HashSet;
use std::fmt;

use crate::abelian::{GradingGroup, GroupElement};
use crate::error::{Error, Result};
use crate::groebner::{ringmap_kernel, subalgebra_membership, Ideal};
use crate::lattice::{fiber_minimal_elements, kernel_hilbert_basis, DegreeSystem};
use crate::poly::{parse_polynomial, BaseField, Coeff, Homogeneity, MonomialOrder, Polynomial};

#[derive(Clone, Debug)]
pub struct GradedRing {
    field: BaseField,
    group: GradingGroup,
    names: Vec<String>,
    degrees: Vec<GroupElement>,
    relations: Ideal,
}

/// A relation generator that is not homogeneous.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub index: usize,
    pub relation: Polynomial,
    pub components: Vec<(GroupElement, Polynomial)>,
}

/// Checks that every relation is homogeneous; returns the offenders.
pub fn validate(group: &GradingGroup, degrees: &[GroupElement], relations: &[Polynomial]) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for (index, r) in relations.iter().enumerate() {
        if !r.homogeneity(group, degrees)?.is_homogeneous() {
            out.push(Violation {
                index,
                relation: r.clone(),
                components: r.homogeneous_components(group, degrees)?.into_iter().collect(),
            });
        }
    }
    Ok(out)
}

fn violation_error(v: &Violation, names: &[String]) -> Error {
    let components = v
        .components
        .iter()
        .map(|(d, p)| format!("{d}: {}", p.display(names)))
        .collect::<Vec<_>>()
        .join("; ");
    Error::NotHomogeneous {
        what: format!("relation {} ({})", v.index + 1, v.relation.display(names)),
        components,
    }
}

impl GradedRing {
    pub fn new(
        field: BaseField,
        group: GradingGroup,
        vars: Vec<(String, GroupElement)>,
        relations: Vec<Polynomial>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for (name, d) in &vars {
            if !seen.insert(name.clone()) {
                return Err(Error::Invalid(format!("variable '{name}' declared twice")));
            }
            group.check(d)?;
        }
        let (names, degrees): (Vec<String>, Vec<GroupElement>) = vars.into_iter().unzip();
        if let Some(v) = validate(&group, &degrees, &relations)?.first() {
            return Err(violation_error(v, &names));
        }
        let relations = Ideal::new(field, names.len(), relations)?;
        Ok(GradedRing {
            field,
            group,
            names,
            degrees,
            relations,
        })
    }

    /// Parses relation strings in the ring's variables.
    pub fn from_strings(
        field: BaseField,
        group: GradingGroup,
        vars: &[(&str, &[i64])],
        relations: &[&str],
    ) -> Result<Self> {
        let vars: Vec<(String, GroupElement)> = vars
            .iter()
            .map(|(n, d)| Ok((n.to_string(), group.element(d)?)))
            .collect::<Result<_>>()?;
        let names: Vec<String> = vars.iter().map(|v| v.0.clone()).collect();
        let rels = relations
            .iter()
            .map(|r| parse_polynomial(r, &names, field))
            .collect::<Result<Vec<_>>>()?;
        GradedRing::new(field, group, vars, rels)
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.field, self.nvars(), i)
    }

    pub fn monomial(&self, exponents: &[u32]) -> Polynomial {
        Polynomial::monomial(self.field, exponents)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        parse_polynomial(src, &self.names, self.field)
    }

    pub fn show(&self, p: &Polynomial) -> String {
        p.display(&self.names).to_string()
    }

    pub fn degree_system(&self) -> DegreeSystem {
        DegreeSystem::new(self.group.clone(), self.degrees.clone()).expect("degrees validated")
    }

    pub fn homogeneity(&self, p: &Polynomial) -> Result<Homogeneity> {
        self.owns(p)?;
        p.homogeneity(&self.group, &self.degrees)
    }

    /// The degree of a homogeneous element; errors on inhomogeneous input.
    pub fn degree_of(&self, p: &Polynomial, what: &str) -> Result<Option<GroupElement>> {
        match self.homogeneity(p)? {
            Homogeneity::Any => Ok(None),
            Homogeneity::Degree(d) => Ok(Some(d)),
            Homogeneity::Inhomogeneous => Err(Error::NotHomogeneous {
                what: format!("{what} {}", self.show(p)),
                components: p
                    .homogeneous_components(&self.group, &self.degrees)?
                    .iter()
                    .map(|(d, c)| format!("{d}: {}", self.show(c)))
                    .collect::<Vec<_>>()
                    .join("; "),
            }),
        }
    }

    pub fn owns(&self, p: &Polynomial) -> Result<()> {
        if p.field() != self.field || p.nvars() != self.nvars() {
            return Err(Error::AmbientMismatch(format!(
                "polynomial in {} variables over {} used in a ring with {} variables over {}",
                p.nvars(),
                p.field(),
                self.nvars(),
                self.field
            )));
        }
        Ok(())
    }

    /// The same ring with extra homogeneous relations.
    pub fn with_relations(&self, extra: Vec<Polynomial>) -> Result<GradedRing> {
        let mut rels = self.relations.generators().to_vec();
        rels.extend(extra);
        GradedRing::new(self.field, self.group.clone(), self.vars(), rels)
    }

    /// The same presentation graded by another group.
    pub fn regrade(&self, group: GradingGroup, degrees: Vec<GroupElement>) -> Result<GradedRing> {
        if degrees.len() != self.nvars() {
            return Err(Error::AmbientMismatch("one degree per variable is required".into()));
        }
        let vars = self.names.iter().cloned().zip(degrees).collect();
        GradedRing::new(self.field, group, vars, self.relations.generators().to_vec())
    }

    pub fn vars(&self) -> Vec<(String, GroupElement)> {
        self.names.iter().cloned().zip(self.degrees.iter().cloned()).collect()
    }

    /// True when `p` vanishes in `A`.
    pub fn is_zero(&self, p: &Polynomial) -> Result<bool> {
        self.owns(p)?;
        self.relations.contains(p)
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.relations.normal_form(p, MonomialOrder::Grevlex)
    }
}

impl fmt::Display for GradedRing {
    /// The body of a ring declaration block.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, d) in self.names.iter().zip(&self.degrees) {
            write!(f, "{n}: {d}; ")?;
        }
        if !self.relations.is_zero() {
            let rels: Vec<String> = self.relations.generators().iter().map(|r| self.show(r)).collect();
            write!(f, "relations: {}; ", rels.join(", "))?;
        }
        Ok(())
    }
}

/// A subring of an ambient ring given by generators, presented as
/// `k[u_1..u_m]/relations`.
#[derive(Clone, Debug)]
pub struct PresentedSubring {
    pub names: Vec<String>,
    /// Representing polynomials in the ambient ring.
    pub generators: Vec<Polynomial>,
    /// Relations among the `u_j`.
    pub relations: Ideal,
}

impl PresentedSubring {
    /// Presents the subring generated by `generators`, naming them
    /// `{prefix}1, {prefix}2, …`.
    pub fn from_generators(ambient: &GradedRing, generators: Vec<Polynomial>, prefix: &str) -> Result<Self> {
        for g in &generators {
            ambient.owns(g)?;
        }
        let relations = ringmap_kernel(&generators, ambient.relations())?;
        let names = (1..=generators.len()).map(|i| format!("{prefix}{i}")).collect();
        Ok(PresentedSubring {
            names,
            generators,
            relations,
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// An expression of `p` in the generators, if `p` lies in the subring.
    pub fn express(&self, ambient: &GradedRing, p: &Polynomial) -> Result<Option<Polynomial>> {
        subalgebra_membership(p, &self.generators, ambient.relations())
    }

    /// Reduced relation basis, for display.
    pub fn relation_basis(&self) -> Vec<Polynomial> {
        self.relations.groebner_basis(MonomialOrder::Grevlex).to_vec()
    }

    pub fn show(&self, p: &Polynomial) -> String {
        p.display(&self.names).to_string()
    }

    /// The subring as an abstract ring graded by `group` with all degrees zero.
    pub fn to_ring(&self, field: BaseField, group: &GradingGroup) -> Result<GradedRing> {
        let vars = self.names.iter().map(|n| (n.clone(), group.zero())).collect();
        GradedRing::new(field, group.clone(), vars, self.relation_basis())
    }

    /// Checks that every relation maps into the ambient relations.
    pub fn verify(&self, ambient: &GradedRing) -> Result<bool> {
        for r in self.relations.generators() {
            let image = r.substitute(&self.generators)?;
            if !ambient.is_zero(&image)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Drops generators that the relations express polynomially in the
    /// others (relations `u_i - h`), renumbering the rest.
    pub fn simplified(&self, prefix: &str) -> Result<PresentedSubring> {
        let mut gens = self.generators.clone();
        let mut rels = self.relations.clone();
        let mut i = gens.len();
        while i > 0 {
            i -= 1;
            let m = gens.len();
            // u_i first, eliminated by a block order
            let mut perm: Vec<usize> = (0..m).map(|j| if j < i { j + 1 } else { j }).collect();
            perm[i] = 0;
            let moved = rels.rename(m, &perm);
            let gb = moved.groebner_basis(MonomialOrder::Block(1));
            let solver = gb.iter().find(|g| {
                g.leading_term(MonomialOrder::Block(1))
                    .map(|(lm, _)| lm.exponents()[0] == 1 && lm.degree() == 1)
                    == Some(true)
            });
            let Some(g) = solver else { continue };
            // g = u_i + (terms free of u_i), monic
            let h = &Polynomial::var(g.field(), m, 0) - g;
            let mut images: Vec<Polynomial> = (0..m).map(|j| Polynomial::var(g.field(), m, j)).collect();
            images[0] = h;
            let back: Vec<usize> = (1..m).map(|j| j - 1).collect();
            let index: Vec<usize> = std::iter::once(0).chain(back).collect();
            let rest: Vec<Polynomial> = gb
                .iter()
                .filter(|r| *r != g)
                .map(|r| r.substitute(&images))
                .collect::<Result<_>>()?;
            let rest: Vec<Polynomial> = rest
                .into_iter()
                .filter(|r| !r.is_zero())
                .map(|r| r.rename(m - 1, &index))
                .collect();
            rels = Ideal::new(g.field(), m - 1, rest)?;
            gens.remove(i);
        }
        let names = (1..=gens.len()).map(|i| format!("{prefix}{i}")).collect();
        let relations = Ideal::new(
            rels.field(),
            gens.len(),
            rels.groebner_basis(MonomialOrder::Grevlex).to_vec(),
        )?;
        Ok(PresentedSubring {
            names,
            generators: gens,
            relations,
        })
    }
}

/// `A_0 = A^G`: monomials on the Hilbert basis of the degree kernel, named
/// `u1, u2, …` in descending lexicographic order of exponents.
pub fn invariant_subring(ring: &GradedRing) -> Result<PresentedSubring> {
    let hb = kernel_hilbert_basis(&ring.degree_system())?;
    let gens = hb.iter().map(|h| ring.monomial(h)).collect();
    PresentedSubring::from_generators(ring, gens, "u")
}

/// `A_G = A/(t_i : deg t_i ≠ 0)`, graded trivially by the same group.
pub fn coinvariants(ring: &GradedRing) -> Result<GradedRing> {
    let keep: Vec<usize> = (0..ring.nvars()).filter(|&i| ring.degrees[i].is_zero()).collect();
    let killed: Vec<usize> = (0..ring.nvars()).filter(|i| !keep.contains(i)).collect();
    kill_variables(ring, &keep, &killed)
}

/// The ring with the variables in `killed` set to zero and dropped.
pub(crate) fn kill_variables(ring: &GradedRing, keep: &[usize], killed: &[usize]) -> Result<GradedRing> {
    let zero = ring.field.zero();
    let values: Vec<(usize, Coeff)> = killed.iter().map(|&i| (i, zero.clone())).collect();
    let mut index = vec![0; ring.nvars()];
    for (pos, &i) in keep.iter().enumerate() {
        index[i] = pos;
    }
    let rels: Vec<Polynomial> = ring
        .relations
        .generators()
        .iter()
        .map(|r| r.specialize(&values).rename(keep.len(), &index))
        .filter(|r| !r.is_zero())
        .collect();
    let vars = keep
        .iter()
        .map(|&i| (ring.names[i].clone(), ring.degrees[i].clone()))
        .collect();
    GradedRing::new(ring.field, ring.group.clone(), vars, rels)
}

/// Monomials generating `A_n` as an `A_0`-module.
pub fn graded_piece(ring: &GradedRing, n: &GroupElement) -> Result<Vec<Polynomial>> {
    let mins = fiber_minimal_elements(&ring.degree_system(), n)?;
    Ok(mins.iter().map(|h| ring.monomial(h)).collect())
}

/// A `k`-rational point of `Spec(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint {
    coords: Vec<Coeff>,
}

impl RationalPoint {
    pub fn new(ring: &GradedRing, coords: Vec<Coeff>) -> Result<Self> {
        if coords.len() != ring.nvars() {
            return Err(Error::InvalidPoint(format!(
                "{} coordinates given for {} variables",
                coords.len(),
                ring.nvars()
            )));
        }
        if let Some(c) = coords.iter().find(|c| c.field() != ring.field) {
            return Err(Error::InvalidPoint(format!("coordinate {c} is not in {}", ring.field)));
        }
        for r in ring.relations.generators() {
            if !r.eval(&coords)?.is_zero() {
                return Err(Error::InvalidPoint(format!(
                    "relation {} does not vanish",
                    ring.show(r)
                )));
            }
        }
        Ok(RationalPoint { coords })
    }

    pub fn from_i64(ring: &GradedRing, coords: &[i64]) -> Result<Self> {
        RationalPoint::new(ring, coords.iter().map(|&c| ring.field.from_i64(c)).collect())
    }

    pub fn origin(ring: &GradedRing) -> Result<Self> {
        RationalPoint::new(ring, vec![ring.field.zero(); ring.nvars()])
    }

    pub fn coords(&self) -> &[Coeff] {
        &self.coords
    }

    /// Variables with nonzero coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| !self.coords[i].is_zero()).collect()
    }

    pub fn is_fixed(&self, ring: &GradedRing) -> bool {
        self.support().iter().all(|&i| ring.degrees[i].is_zero())
    }

    pub fn show(&self, ring: &GradedRing) -> String {
        let parts: Vec<String> = ring
            .names
            .iter()
            .zip(&self.coords)
            .map(|(n, c)| format!("{n} = {c}"))
            .collect();
        format!("({})", parts.join(", "))
    }
}

fn require_fixed(ring: &GradedRing, x: &RationalPoint) -> Result<()> {
    if !x.is_fixed(ring) {
        let bad: Vec<String> = x
            .support()
            .into_iter()
            .filter(|&i| !ring.degrees[i].is_zero())
            .map(|i| format!("{} = {} has degree {}", ring.names[i], x.coords[i], ring.degrees[i]))
            .collect();
        return Err(Error::NotFixedPoint(bad.join(", ")));
    }
    Ok(())
}

/// Generators of the homogeneous maximal ideal `m_x` at a fixed point.
pub fn fixed_point_max_ideal_generators(ring: &GradedRing, x: &RationalPoint) -> Result<Vec<Polynomial>> {
    require_fixed(ring, x)?;
    Ok((0..ring.nvars())
        .map(|i| {
            if ring.degrees[i].is_zero() {
                &ring.var(i) - &Polynomial::constant(ring.field, ring.nvars(), x.coords[i].clone())
            } else {
                ring.var(i)
            }
        })
        .collect())
}

/// `m_x` together with the relations of `A`, as an ideal of the ambient
/// polynomial ring.
pub fn fixed_point_max_ideal(ring: &GradedRing, x: &RationalPoint) -> Result<Ideal> {
    ring.relations.extend(fixed_point_max_ideal_generators(ring, x)?)
}

/// A sublist of `gens` (by index) minimally generating the ideal they span
/// near the fixed point `x`; its length is `dim M/m_x M`.
pub fn minimal_homogeneous_generators(ring: &GradedRing, gens: &[Polynomial], x: &RationalPoint) -> Result<Vec<usize>> {
    for g in gens {
        ring.degree_of(g, "generator")?;
    }
    let m = fixed_point_max_ideal_generators(ring, x)?;
    let mut m_times_gens = Vec::new();
    for a in &m {
        for g in gens {
            m_times_gens.push(a * g);
        }
    }
    let base = ring.relations.extend(m_times_gens)?;
    let mut keep: Vec<usize> = (0..gens.len()).collect();
    for i in 0..gens.len() {
        let others: Vec<Polynomial> = keep.iter().filter(|&&j| j != i).map(|&j| gens[j].clone()).collect();
        if base.extend(others)?.contains(&gens[i])? {
            keep.retain(|&j| j != i);
        }
    }
    Ok(keep)
}

#[derive(Clone, Debug, PartialEq)]
pub enum CartierVerdict {
    Principal(Polynomial),
    NotPrincipal { rank: usize },
}

/// Decides whether a homogeneous ideal is principal near a fixed point.
/// `A` is assumed to be a domain.
pub fn cartier_at_fixed_point(
    ring: &GradedRing,
    ideal_gens: &[Polynomial],
    x: &RationalPoint,
) -> Result<CartierVerdict> {
    let keep = minimal_homogeneous_generators(ring, ideal_gens, x)?;
    Ok(match keep.len() {
        0 => CartierVerdict::Principal(Polynomial::zero(ring.field, ring.nvars())),
        1 => CartierVerdict::Principal(ideal_gens[keep[0]].clone()),
        rank => CartierVerdict::NotPrincipal { rank },
    })
}

#[cfg(test)]
mod tests;
