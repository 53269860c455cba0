//! End-to-end pipelines: cohomology presentation in, loop homology
//! presentation (or an honest partial result) out. Shared by the CLI and
//! the acceptance suite.

use crate::algebra::{AlgebraPresentation, ModuleSpec};
use crate::emss::{
    assume_collapse, build_e2, collapse_by_sparsity, einfinity, E2Page, SparsityOutcome,
    SparsityRefusal,
};
use crate::error::Result;
use crate::extension::{
    assemble_loop_homology, enumerate_lift_candidates, extension_checks_for, zero_column_lift,
    CommutativityPolicy, LoopHomologyResult,
};
use crate::series::Window;

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub p_max: u32,
    pub q_window: Window,
    pub collapse_citation: Option<String>,
}

impl PipelineConfig {
    pub fn new(p_max: u32, q_window: Window) -> Self {
        PipelineConfig {
            p_max,
            q_window,
            collapse_citation: None,
        }
    }

    pub fn with_citation(mut self, citation: Option<String>) -> Self {
        self.collapse_citation = citation;
        self
    }
}

/// A q-window wide enough for the standard certifications: the coefficient
/// support stretched downward by the dual classes' degrees per column.
pub fn default_q_window(
    ring: &AlgebraPresentation,
    coefficients: &AlgebraPresentation,
    p_max: u32,
) -> Result<Window> {
    let max_gen = ring
        .generators
        .iter()
        .map(|g| g.degree.abs())
        .max()
        .unwrap_or(1);
    let (lo, hi) = if coefficients.is_finite_dimensional() {
        let s = coefficients.degree_support()?;
        (s.lo, s.hi)
    } else {
        (0, (p_max as i64 + 2) * max_gen)
    };
    Window::new(lo - (p_max as i64 + 1) * max_gen - 1, hi + 1)
}

#[derive(Debug)]
pub enum LoopOutcome {
    Resolved {
        page: E2Page,
        result: LoopHomologyResult,
    },
    CollapseRefused {
        page: E2Page,
        refusal: SparsityRefusal,
    },
}

impl LoopOutcome {
    pub fn page(&self) -> &E2Page {
        match self {
            LoopOutcome::Resolved { page, .. } => page,
            LoopOutcome::CollapseRefused { page, .. } => page,
        }
    }

    pub fn result(&self) -> Option<&LoopHomologyResult> {
        match self {
            LoopOutcome::Resolved { result, .. } => Some(result),
            LoopOutcome::CollapseRefused { .. } => None,
        }
    }
}

fn run_pipeline(
    module: &ModuleSpec,
    intersection_ring: &AlgebraPresentation,
    dim_n: i64,
    cfg: &PipelineConfig,
    labels: (String, String),
    commutativity: CommutativityPolicy,
) -> Result<LoopOutcome> {
    let page = build_e2(module, dim_n, cfg.p_max, cfg.q_window, labels)?;
    let cert = match collapse_by_sparsity(&page)? {
        SparsityOutcome::Certified(c) => c,
        SparsityOutcome::Refused(refusal) => match &cfg.collapse_citation {
            Some(cite) => assume_collapse(&page, cite)?,
            None => return Ok(LoopOutcome::CollapseRefused { page, refusal }),
        },
    };
    let einf = einfinity(page.clone(), cert)?;
    let checks = extension_checks_for(einf.presentation())?;
    let mut reports = Vec::with_capacity(checks.len());
    for check in &checks {
        reports.push(enumerate_lift_candidates(&einf, check)?);
    }
    let lift = zero_column_lift(&einf, intersection_ring)?;
    let result = assemble_loop_homology(&einf, &reports, Some(&lift), commutativity)?;
    Ok(LoopOutcome::Resolved { page, result })
}

/// The absolute pipeline: `M = N`, identity module structure. Undecided
/// commutators are discharged by the graded commutativity of the absolute
/// loop product; every other check must close by the degree argument or the
/// zero-column lift.
pub fn loop_homology(
    cohomology: &AlgebraPresentation,
    dim_n: i64,
    cfg: &PipelineConfig,
    space: &str,
) -> Result<LoopOutcome> {
    let module = ModuleSpec::self_module(cohomology);
    run_pipeline(
        &module,
        cohomology,
        dim_n,
        cfg,
        (space.to_string(), space.to_string()),
        CommutativityPolicy::Cited("graded commutativity of the absolute loop product".into()),
    )
}

/// The relative pipeline: `N -> M` with the module structure given by the
/// induced map on cohomology. The relative loop product is not commutative
/// in general, so commutators must close by the degree argument.
pub fn relative_loop_homology(
    module: &ModuleSpec,
    dim_n: i64,
    cfg: &PipelineConfig,
    labels: (String, String),
) -> Result<LoopOutcome> {
    let intersection_ring = module.coefficients.clone();
    run_pipeline(
        module,
        &intersection_ring,
        dim_n,
        cfg,
        labels,
        CommutativityPolicy::DegreeArgument,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraMorphism;
    use crate::scalar::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn cp2_loop_homology_resolves_with_citation() {
        let a = AlgebraPresentation::truncated(q(), "x", 2, 2).unwrap();
        let cfg = PipelineConfig::new(4, Window::new(-24, 24).unwrap())
            .with_citation(Some("K-Y Thm 2.2".into()));
        let out = loop_homology(&a, 4, &cfg, "CP2").unwrap();
        let result = out.result().expect("resolved");
        assert!(result.is_complete());
        let p = &result.presentation;
        assert_eq!(p.generators[p.gen_index("x").unwrap()].degree, -2);
        assert_eq!(p.generators[p.gen_index("u").unwrap()].degree, -1);
        assert_eq!(p.generators[p.gen_index("t").unwrap()].degree, 4);
    }

    #[test]
    fn cp2_without_citation_is_refused_not_guessed() {
        let a = AlgebraPresentation::truncated(q(), "x", 2, 2).unwrap();
        let cfg = PipelineConfig::new(4, Window::new(-24, 24).unwrap());
        let out = loop_homology(&a, 4, &cfg, "CP2").unwrap();
        assert!(matches!(out, LoopOutcome::CollapseRefused { .. }));
    }

    #[test]
    fn sphere_pipeline_needs_no_citation() {
        // Λ(x_3): the exterior page has bounded columns? No: K[v] raises
        // columns without bound, so sparsity cannot enumerate; a citation
        // stands in. The checks themselves all close.
        let a = AlgebraPresentation::exterior(q(), &[("x", 3)]).unwrap();
        let cfg = PipelineConfig::new(4, Window::new(-24, 24).unwrap())
            .with_citation(Some("dimension-forced collapse".into()));
        let out = loop_homology(&a, 3, &cfg, "S3").unwrap();
        let result = out.result().expect("resolved");
        assert!(result.is_complete());
    }

    #[test]
    fn relative_cp1_over_bs1_fully_machine_checked() {
        let ring = AlgebraPresentation::polynomial(q(), &[("x", 2)]).unwrap();
        let c = AlgebraPresentation::truncated(q(), "x", 2, 1).unwrap();
        let act = AlgebraMorphism::new(ring.clone(), c.clone(), vec![c.gen_element("x").unwrap()])
            .unwrap();
        let module = ModuleSpec::new(ring, c, act).unwrap();
        let cfg = PipelineConfig::new(3, Window::new(-8, 8).unwrap());
        let out =
            relative_loop_homology(&module, 2, &cfg, ("BS1".into(), "CP1".into())).unwrap();
        let result = out.result().expect("resolved without any citation");
        assert!(result.is_complete());
        // Sparsity-forced collapse and degree-argument commutators only.
        assert!(matches!(
            result.collapse.kind,
            crate::emss::CollapseKind::SparsityForced
        ));
        for (name, res) in &result.resolutions {
            assert!(
                matches!(
                    res,
                    crate::extension::ResolutionKind::DegreeArgument
                        | crate::extension::ResolutionKind::ZeroColumnLift
                ),
                "{name} resolved by {res:?}"
            );
        }
    }
}
