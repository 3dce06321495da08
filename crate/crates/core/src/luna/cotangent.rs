use std::collections::BTreeMap;

use crate::abelian::{quotient_group, GradingGroup, GroupElement, Subgroup};
use crate::action::support_subgroup;
use crate::error::{Error, Result};
use crate::gradedalg::RationalPoint;
use crate::groebner::{syzygies, Ideal};
use crate::poly::{linalg, Coeff, Homogeneity, Polynomial};

use super::GradedRingMap;

/// The presentation `B = A[s]/J` with `J = (t_i - φ_i(s), relations of B)`
/// over `P = k[t, s]/(relations of A)`, and the homogeneous pieces of the
/// syzygies of `J`, computed once per map.
#[derive(Clone, Debug)]
pub struct CotangentData {
    map: GradedRingMap,
    /// Degree of each generator of `J`.
    gen_degrees: Vec<GroupElement>,
    /// Degree of each `s_j`.
    var_degrees: Vec<GroupElement>,
    /// `∂g_i/∂s_j` in `k[t, s]`.
    jacobian: Vec<Vec<Polynomial>>,
    /// Homogeneous syzygy pieces, each a vector indexed by generators.
    pieces: Vec<Vec<Polynomial>>,
}

/// Graded dimensions of `H^0` and `H^1` of the cotangent complex of `B/A`
/// at `x'`, by class in `L/L_{x'}`. Classes with dimension zero are left out.
#[derive(Clone, Debug, PartialEq)]
pub struct CotangentFiberReport {
    pub point: RationalPoint,
    pub base_point: RationalPoint,
    pub label: Subgroup,
    pub classes: GradingGroup,
    pub h0: Vec<(GroupElement, usize)>,
    pub h1: Vec<(GroupElement, usize)>,
}

impl CotangentFiberReport {
    /// `H^1` sits entirely in the trivial class.
    pub fn h1_trivially_graded(&self) -> bool {
        self.h1.iter().all(|(c, _)| c.is_zero())
    }

    pub fn h1_total(&self) -> usize {
        self.h1.iter().map(|(_, d)| d).sum()
    }

    pub fn h0_total(&self) -> usize {
        self.h0.iter().map(|(_, d)| d).sum()
    }
}

impl CotangentData {
    pub fn new(phi: &GradedRingMap) -> Result<Self> {
        let a = phi.source();
        let b = phi.target();
        let group = a.group();
        let (n, p) = (a.nvars(), b.nvars());
        let field = a.field();
        let lift_t: Vec<usize> = (0..n).collect();
        let lift_s: Vec<usize> = (n..n + p).collect();
        let mut degrees: Vec<GroupElement> = a.degrees().to_vec();
        degrees.extend(b.degrees().iter().cloned());

        let mut gens = Vec::new();
        let mut gen_degrees = Vec::new();
        for (i, f) in phi.images().iter().enumerate() {
            gens.push(&Polynomial::var(field, n + p, i) - &f.rename(n + p, &lift_s));
            gen_degrees.push(a.degrees()[i].clone());
        }
        for r in b.relations().generators() {
            match b.homogeneity(r)? {
                Homogeneity::Degree(d) => {
                    gens.push(r.rename(n + p, &lift_s));
                    gen_degrees.push(d);
                }
                Homogeneity::Any => {}
                Homogeneity::Inhomogeneous => {
                    return Err(Error::Internal(format!("relation {} is not homogeneous", b.show(r))))
                }
            }
        }
        let modulo = Ideal::new(
            field,
            n + p,
            a.relations()
                .generators()
                .iter()
                .map(|r| r.rename(n + p, &lift_t))
                .collect(),
        )?;
        let syz = syzygies(&gens, &modulo)?;
        let mut pieces = Vec::new();
        for col in &syz.columns {
            let mut split: BTreeMap<GroupElement, Vec<Polynomial>> = BTreeMap::new();
            for (i, c) in col.iter().enumerate() {
                for (e, comp) in c.homogeneous_components(group, &degrees)? {
                    let d = group.add(&e, &gen_degrees[i])?;
                    split
                        .entry(d)
                        .or_insert_with(|| vec![Polynomial::zero(field, n + p); gens.len()])[i] = comp;
                }
            }
            pieces.extend(split.into_values());
        }
        let jacobian = gens
            .iter()
            .map(|g| (0..p).map(|j| g.derivative(n + j)).collect())
            .collect();
        Ok(CotangentData {
            map: phi.clone(),
            gen_degrees,
            var_degrees: b.degrees().to_vec(),
            jacobian,
            pieces,
        })
    }

    pub fn at(&self, xp: &RationalPoint) -> Result<CotangentFiberReport> {
        let phi = &self.map;
        let x = phi.image_point(xp)?;
        let label = support_subgroup(phi.target(), xp)?;
        let source_label = support_subgroup(phi.source(), &x)?;
        if !source_label.is_subgroup_of(&label)? {
            return Err(Error::Internal(format!(
                "support subgroup {source_label} of the image is not inside {label}"
            )));
        }
        let proj = quotient_group(phi.source().group(), &label)?;
        let mut pt: Vec<Coeff> = x.coords().to_vec();
        pt.extend(xp.coords().iter().cloned());

        let gen_class: Vec<GroupElement> = self
            .gen_degrees
            .iter()
            .map(|d| proj.project(d))
            .collect::<Result<_>>()?;
        let var_class: Vec<GroupElement> = self
            .var_degrees
            .iter()
            .map(|d| proj.project(d))
            .collect::<Result<_>>()?;
        let jac: Vec<Vec<Coeff>> = self
            .jacobian
            .iter()
            .map(|row| row.iter().map(|f| f.eval(&pt)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let rel: Vec<Vec<Coeff>> = self
            .pieces
            .iter()
            .map(|v| v.iter().map(|f| f.eval(&pt)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;

        let mut classes: Vec<GroupElement> = gen_class.iter().chain(&var_class).cloned().collect();
        classes.sort();
        classes.dedup();
        let (mut h0, mut h1) = (Vec::new(), Vec::new());
        for c in classes {
            let rows: Vec<usize> = (0..gen_class.len()).filter(|&i| gen_class[i] == c).collect();
            let cols: Vec<usize> = (0..var_class.len()).filter(|&j| var_class[j] == c).collect();
            let jac_c: Vec<Vec<Coeff>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| jac[i][j].clone()).collect())
                .collect();
            let rank_jac = if cols.is_empty() { 0 } else { linalg::rank(&jac_c) };
            let rel_c: Vec<Vec<Coeff>> = rel
                .iter()
                .map(|v| rows.iter().map(|&i| v[i].clone()).collect::<Vec<_>>())
                .filter(|v| v.iter().any(|e| !e.is_zero()))
                .collect();
            let rank_rel = linalg::rank(&rel_c);
            let d1 = rows
                .len()
                .checked_sub(rank_jac + rank_rel)
                .ok_or_else(|| Error::Internal("syzygies evaluate outside the Jacobian kernel".into()))?;
            let d0 = cols.len() - rank_jac;
            if d0 > 0 {
                h0.push((c.clone(), d0));
            }
            if d1 > 0 {
                h1.push((c, d1));
            }
        }
        Ok(CotangentFiberReport {
            point: xp.clone(),
            base_point: x,
            label,
            classes: proj.target().clone(),
            h0,
            h1,
        })
    }
}

pub fn cotangent_fiber(phi: &GradedRingMap, xp: &RationalPoint) -> Result<CotangentFiberReport> {
    CotangentData::new(phi)?.at(xp)
}
