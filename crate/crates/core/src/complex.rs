//! Chain/cochain complexes of finite-dimensional graded vector spaces with
//! exact differentials stored block-by-block per internal degree, and
//! cohomology via exact kernel/image ranks.

use crate::error::{Error, Result};
use crate::matrix::{reduce_against, Matrix};
use crate::scalar::{FieldSpec, Scalar};
use crate::series::Window;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Differentials lower the homological index: d_s : C_s -> C_{s-1}.
    Chain,
    /// Differentials raise it: d^s : C^s -> C^{s+1}.
    Cochain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisLabel {
    pub name: String,
    pub degree: i64,
}

/// A complex of free graded modules over the ground field. Differentials
/// preserve internal degree, so they are stored as one exact matrix per
/// (source index, internal degree); each block maps the degree-q component
/// of the source stage to the degree-q component of the adjacent stage.
#[derive(Debug, Clone)]
pub struct FreeComplex {
    pub field: FieldSpec,
    pub direction: Direction,
    stages: BTreeMap<u32, Vec<BasisLabel>>,
    diffs: BTreeMap<u32, BTreeMap<i64, Matrix>>,
    /// Highest homological index whose cohomology the populated stages
    /// determine; `None` means the complex is complete (missing stages are
    /// genuinely zero).
    valid_s: Option<u32>,
    /// Internal-degree range the complex was built on; `None` = all degrees.
    valid_q: Option<Window>,
}

impl FreeComplex {
    pub fn new(field: FieldSpec, direction: Direction) -> Self {
        FreeComplex {
            field,
            direction,
            stages: BTreeMap::new(),
            diffs: BTreeMap::new(),
            valid_s: None,
            valid_q: None,
        }
    }

    pub fn set_validity(&mut self, valid_s: Option<u32>, valid_q: Option<Window>) {
        self.valid_s = valid_s;
        self.valid_q = valid_q;
    }

    pub fn add_stage(&mut self, s: u32, labels: Vec<BasisLabel>) {
        self.stages.insert(s, labels);
    }

    pub fn stage(&self, s: u32) -> &[BasisLabel] {
        self.stages.get(&s).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn stage_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.stages.keys().copied()
    }

    pub fn target_of(&self, s: u32) -> Option<u32> {
        match self.direction {
            Direction::Cochain => Some(s + 1),
            Direction::Chain => s.checked_sub(1),
        }
    }

    pub fn source_into(&self, s: u32) -> Option<u32> {
        match self.direction {
            Direction::Cochain => s.checked_sub(1),
            Direction::Chain => Some(s + 1),
        }
    }

    /// Basis positions of the degree-q component of stage s.
    pub fn indices_at(&self, s: u32, q: i64) -> Vec<usize> {
        self.stage(s)
            .iter()
            .enumerate()
            .filter(|(_, l)| l.degree == q)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn dim_at(&self, s: u32, q: i64) -> usize {
        self.stage(s).iter().filter(|l| l.degree == q).count()
    }

    pub fn degrees_at(&self, s: u32) -> Vec<i64> {
        let mut ds: Vec<i64> = self.stage(s).iter().map(|l| l.degree).collect();
        ds.sort();
        ds.dedup();
        ds
    }

    pub fn set_diff(&mut self, s: u32, q: i64, m: Matrix) {
        let src = self.dim_at(s, q);
        let tgt = self
            .target_of(s)
            .map(|t| self.dim_at(t, q))
            .unwrap_or(0);
        assert_eq!(m.cols(), src, "differential block has wrong source dim");
        assert_eq!(m.rows(), tgt, "differential block has wrong target dim");
        self.diffs.entry(s).or_default().insert(q, m);
    }

    /// The differential block out of (s, q); materializes a zero block when
    /// none was stored.
    pub fn diff_at(&self, s: u32, q: i64) -> Matrix {
        if let Some(m) = self.diffs.get(&s).and_then(|per_q| per_q.get(&q)) {
            return m.clone();
        }
        let src = self.dim_at(s, q);
        let tgt = self
            .target_of(s)
            .map(|t| self.dim_at(t, q))
            .unwrap_or(0);
        Matrix::zeros(self.field, tgt, src)
    }

    fn check_q(&self, q: i64) -> Result<()> {
        if let Some(w) = self.valid_q {
            if !w.contains(q) {
                return Err(Error::InvalidInput(format!(
                    "internal degree {q} outside the built window {w}"
                )));
            }
        }
        Ok(())
    }

    fn check_s(&self, s: u32) -> Result<()> {
        if let Some(v) = self.valid_s {
            if s > v {
                return Err(Error::BeyondValidRange {
                    requested: s,
                    valid: v,
                });
            }
        }
        Ok(())
    }

    /// Exact d∘d = 0 over every populated block.
    pub fn check_d_squared(&self) -> Result<()> {
        for (&s, per_q) in &self.diffs {
            let Some(t) = self.target_of(s) else { continue };
            for (&q, m) in per_q {
                let next = self.diff_at(t, q);
                if next.rows() == 0 || m.cols() == 0 {
                    continue;
                }
                if !next.matmul(m).is_zero() {
                    return Err(Error::NotAComplex { stage: s, degree: q });
                }
            }
        }
        Ok(())
    }

    /// Alternating sum of stage dimensions in internal degree q over stages
    /// `0..=s_top` (meaningful when the complex vanishes beyond in that
    /// degree).
    pub fn euler_characteristic(&self, q: i64, s_top: u32) -> i64 {
        (0..=s_top)
            .map(|s| {
                let d = self.dim_at(s, q) as i64;
                if s % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }
}

/// Dimensions and echelon-normalized representatives of (co)homology per
/// (homological index, internal degree).
#[derive(Debug, Clone, Default)]
pub struct CohomologyResult {
    pub dims: BTreeMap<(u32, i64), usize>,
    pub reps: BTreeMap<(u32, i64), Vec<Vec<Scalar>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimEntry {
    pub p: u32,
    pub q: i64,
    pub dim: usize,
}

impl CohomologyResult {
    pub fn dim(&self, s: u32, q: i64) -> usize {
        self.dims.get(&(s, q)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> Vec<DimEntry> {
        self.dims
            .iter()
            .filter(|(_, &d)| d > 0)
            .map(|(&(p, q), &dim)| DimEntry { p, q, dim })
            .collect()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ((u32, i64), usize)> + '_ {
        self.dims
            .iter()
            .filter(|(_, &d)| d > 0)
            .map(|(&k, &d)| (k, d))
    }
}

/// Cohomology of `cx` for homological indices `≤ s_max` (optionally cut to a
/// q-window). Verifies d∘d = 0 on the touched blocks first; representatives
/// are cocycles reduced modulo coboundaries and put in reduced echelon form,
/// so repeated runs are bit-identical.
pub fn cohomology(
    cx: &FreeComplex,
    s_max: u32,
    q_window: Option<Window>,
) -> Result<CohomologyResult> {
    cx.check_d_squared()?;
    let mut out = CohomologyResult::default();
    for s in cx.stage_indices().collect::<Vec<_>>() {
        if s > s_max {
            continue;
        }
        cx.check_s(s)?;
        for q in cx.degrees_at(s) {
            if let Some(w) = q_window {
                if !w.contains(q) {
                    continue;
                }
            }
            cx.check_q(q)?;
            let (dim, reps) = cohomology_at(cx, s, q)?;
            out.dims.insert((s, q), dim);
            out.reps.insert((s, q), reps);
        }
    }
    Ok(out)
}

fn cohomology_at(cx: &FreeComplex, s: u32, q: i64) -> Result<(usize, Vec<Vec<Scalar>>)> {
    let n = cx.dim_at(s, q);
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let outgoing = cx.diff_at(s, q);
    let cocycles: Vec<Vec<Scalar>> = if outgoing.rows() == 0 {
        // Zero target: everything is a cocycle.
        (0..n)
            .map(|i| {
                let mut v = vec![cx.field.zero(); n];
                v[i] = cx.field.one();
                v
            })
            .collect()
    } else {
        outgoing.kernel_basis()
    };
    let incoming = match cx.source_into(s) {
        Some(src) => cx.diff_at(src, q),
        None => Matrix::zeros(cx.field, n, 0),
    };
    let rank_b = incoming.rank();
    let dim = cocycles.len() - rank_b;
    // Row-reduce the boundary space, then cut it out of each cocycle.
    let b_rows: Vec<Vec<Scalar>> = (0..incoming.cols()).map(|j| incoming.column(j)).collect();
    let (b_rref, b_pivots) = Matrix::from_rows(cx.field, b_rows).rref();
    let mut reduced = Vec::new();
    for z in &cocycles {
        let r = if b_pivots.is_empty() {
            z.clone()
        } else {
            reduce_against(z, &b_rref, &b_pivots)
        };
        if r.iter().any(|c| !c.is_zero()) {
            reduced.push(r);
        }
    }
    let reps = if reduced.is_empty() {
        Vec::new()
    } else {
        let (rm, pivots) = Matrix::from_rows(cx.field, reduced).rref();
        (0..pivots.len())
            .map(|i| (0..rm.cols()).map(|j| rm.get(i, j).clone()).collect())
            .collect()
    };
    if reps.len() != dim {
        return Err(Error::Certification(format!(
            "representative count {} disagrees with rank computation {} at ({s}, {q})",
            reps.len(),
            dim
        )));
    }
    Ok((dim, reps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn zero_differentials_give_module_dims() {
        let mut cx = FreeComplex::new(q(), Direction::Cochain);
        cx.add_stage(
            0,
            vec![
                BasisLabel { name: "a".into(), degree: 0 },
                BasisLabel { name: "b".into(), degree: 2 },
            ],
        );
        cx.add_stage(1, vec![BasisLabel { name: "c".into(), degree: 2 }]);
        cx.set_validity(Some(0), None);
        let h = cohomology(&cx, 0, None).unwrap();
        assert_eq!(h.dim(0, 0), 1);
        assert_eq!(h.dim(0, 2), 1);
    }

    #[test]
    fn acyclic_two_term_complex() {
        let mut cx = FreeComplex::new(q(), Direction::Cochain);
        cx.add_stage(0, vec![BasisLabel { name: "e0".into(), degree: 0 }]);
        cx.add_stage(1, vec![BasisLabel { name: "e1".into(), degree: 0 }]);
        cx.set_diff(0, 0, Matrix::identity(q(), 1));
        cx.set_validity(Some(1), None);
        let h = cohomology(&cx, 1, None).unwrap();
        assert_eq!(h.dim(0, 0), 0);
        assert_eq!(h.dim(1, 0), 0);
    }

    #[test]
    fn d_squared_violation_detected() {
        let mut cx = FreeComplex::new(q(), Direction::Cochain);
        for s in 0..3 {
            cx.add_stage(s, vec![BasisLabel { name: format!("e{s}"), degree: 0 }]);
        }
        cx.set_diff(0, 0, Matrix::identity(q(), 1));
        cx.set_diff(1, 0, Matrix::identity(q(), 1));
        assert!(matches!(
            cohomology(&cx, 2, None),
            Err(Error::NotAComplex { .. })
        ));
    }

    #[test]
    fn representatives_avoid_boundaries() {
        // 0 -> K -> K^2 with image spanned by (1,1); H^1 is 1-dimensional.
        let mut cx = FreeComplex::new(q(), Direction::Cochain);
        cx.add_stage(0, vec![BasisLabel { name: "e".into(), degree: 0 }]);
        cx.add_stage(
            1,
            vec![
                BasisLabel { name: "f1".into(), degree: 0 },
                BasisLabel { name: "f2".into(), degree: 0 },
            ],
        );
        let f = q();
        let d = Matrix::from_rows(f, vec![vec![f.one()], vec![f.one()]]);
        cx.set_diff(0, 0, d);
        cx.set_validity(Some(1), None);
        let h = cohomology(&cx, 1, None).unwrap();
        assert_eq!(h.dim(1, 0), 1);
        let reps = &h.reps[&(1, 0)];
        assert_eq!(reps.len(), 1);
        // Echelon-normalized and reduced against the boundary (1,1): the
        // canonical complement representative is (0,1).
        assert!(reps[0][0].is_zero());
        assert!(reps[0][1].is_one());
    }
}
