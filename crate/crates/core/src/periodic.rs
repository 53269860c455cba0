//! Hochschild cochain complexes from small free bimodule resolutions of a
//! single-generator algebra: the standard 2-periodic resolution of a
//! truncated polynomial algebra (alternating multipliers `x⊗1 - 1⊗x` and
//! `Σ_{i+j=n} x^i⊗x^j`), and the constant-multiplier resolution of an
//! exterior algebra on one odd generator.
//!
//! Each stage is a rank-one free bimodule; applying `Hom` into symmetric
//! module coefficients turns the multipliers into explicit linear maps on
//! the coefficient space, assembled here block-by-block per internal degree.

use crate::algebra::{Element, ModuleSpec, Monomial};
use crate::complex::{BasisLabel, Direction, FreeComplex};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::FieldSpec;

/// How a rank-one free-bimodule stage maps into the next: the element of
/// `A ⊗ A^op` multiplied in.
enum Multiplier {
    /// `x⊗1 - 1⊗x`, internal degree `d`.
    Commutator,
    /// `Σ_{i+j=n} x^i ⊗ x^j`, internal degree `n·d`.
    PowerSum,
}

struct SingleGenResolution {
    /// Internal degree of the generator x of the acting algebra.
    degree: i64,
    /// Exponent bound n (x^{n+1} = 0).
    bound: u32,
}

impl SingleGenResolution {
    fn multiplier_for_target(&self, target_stage: u32, exterior_odd: bool) -> Multiplier {
        if exterior_odd {
            // Odd generator away from characteristic 2: the resolution is
            // K[σ]-shaped with the same commutator multiplier at each stage.
            Multiplier::Commutator
        } else if target_stage % 2 == 1 {
            Multiplier::Commutator
        } else {
            Multiplier::PowerSum
        }
    }

    /// Internal degree of the stage-s bimodule generator e_s.
    fn stage_shift(&self, s: u32, exterior_odd: bool) -> i64 {
        if exterior_odd {
            s as i64 * self.degree
        } else {
            let pairs = (s / 2) as i64;
            let odd = (s % 2) as i64;
            pairs * (self.bound as i64 + 1) * self.degree + odd * self.degree
        }
    }
}

fn validate_module(coefficients: &ModuleSpec, degree: i64, bound: u32) -> Result<()> {
    let alg = &coefficients.algebra;
    if alg.generators.len() != 1 {
        return Err(Error::Unsupported(format!(
            "resolution needs a single-generator acting algebra, got {}",
            alg.describe()
        )));
    }
    let g = &alg.generators[0];
    if g.degree != degree || g.bound != Some(bound) {
        return Err(Error::Unsupported(format!(
            "module is over {} but the resolution is for |x| = {degree}, x^{} = 0",
            alg.describe(),
            bound + 1
        )));
    }
    Ok(())
}

/// `Hom` of the 2-periodic free bimodule resolution of `A = K[x]/(x^(n+1))`,
/// `|x| = 2m`, into symmetric module coefficients, truncated so that
/// cohomology is valid through homological index `s_max`. In characteristic
/// 2 the construction applies verbatim to odd `|x|` as well (signs vanish),
/// which is how exterior generators enter mod 2.
pub fn periodic_hochschild_complex(
    m: u32,
    n: u32,
    field: FieldSpec,
    coefficients: &ModuleSpec,
    s_max: u32,
) -> Result<FreeComplex> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("m and n must be positive".into()));
    }
    truncated_hochschild_complex(2 * m as i64, n, field, coefficients, s_max)
}

/// Degree-parametrized variant of [`periodic_hochschild_complex`]. An odd
/// generator degree is only meaningful in characteristic 2, where the signs
/// that would obstruct the 2-periodic resolution vanish.
pub fn truncated_hochschild_complex(
    degree: i64,
    n: u32,
    field: FieldSpec,
    coefficients: &ModuleSpec,
    s_max: u32,
) -> Result<FreeComplex> {
    if degree.rem_euclid(2) == 1 && field.characteristic != 2 {
        return Err(Error::Unsupported(
            "2-periodic resolution needs an even generator away from characteristic 2".into(),
        ));
    }
    single_generator_hochschild_complex(degree, n, field, coefficients, s_max, false)
}

/// Same assembly for `Λ(x)` on one odd generator in characteristic ≠ 2,
/// where the resolution has the commutator multiplier at every stage.
pub fn exterior_hochschild_complex(
    degree: i64,
    field: FieldSpec,
    coefficients: &ModuleSpec,
    s_max: u32,
) -> Result<FreeComplex> {
    if degree.rem_euclid(2) != 1 || field.characteristic == 2 {
        return Err(Error::Unsupported(
            "constant-multiplier resolution applies to an odd generator away from characteristic 2"
                .into(),
        ));
    }
    single_generator_hochschild_complex(degree, 1, field, coefficients, s_max, true)
}

fn single_generator_hochschild_complex(
    degree: i64,
    bound: u32,
    field: FieldSpec,
    coefficients: &ModuleSpec,
    s_max: u32,
    exterior_odd: bool,
) -> Result<FreeComplex> {
    validate_module(coefficients, degree, bound)?;
    if coefficients.coefficients.field != field {
        return Err(Error::FieldMismatch);
    }
    let resolution = SingleGenResolution { degree, bound };
    let coeff_alg = &coefficients.coefficients;
    let support = coeff_alg.degree_support()?;
    let mut coeff_basis: Vec<Monomial> = Vec::new();
    for d in support.iter() {
        coeff_basis.extend(coeff_alg.basis_in_degree(d)?);
    }

    let mut cx = FreeComplex::new(field, Direction::Cochain);
    // One guard stage beyond s_max keeps H^{s_max} honest.
    for s in 0..=s_max + 1 {
        let shift = resolution.stage_shift(s, exterior_odd);
        let labels = coeff_basis
            .iter()
            .map(|mon| BasisLabel {
                name: format!("{}·e{s}", coeff_alg.format_monomial(mon)),
                degree: coeff_alg.monomial_degree(mon) - shift,
            })
            .collect();
        cx.add_stage(s, labels);
    }

    let gen_name = coefficients.algebra.generators[0].name.clone();
    let x = coefficients.algebra.gen_element(&gen_name)?;

    for s in 0..=s_max {
        let target = s + 1;
        let mult = resolution.multiplier_for_target(target, exterior_odd);
        // Image of each coefficient basis vector under the multiplier action.
        let images: Vec<Element> = coeff_basis
            .iter()
            .map(|mon| {
                let w = Element::term(mon.clone(), field.one());
                apply_multiplier(&mult, coefficients, &x, &w, bound)
            })
            .collect();
        fill_blocks(&mut cx, s, &coeff_basis, coeff_alg, &images)?;
    }
    cx.set_validity(Some(s_max), None);
    cx.check_d_squared()?;
    Ok(cx)
}

/// Bimodule action of the multiplier on a coefficient element, with the
/// Koszul twist `(a⊗b)·w = (-1)^{|b||w|} a·w·b`.
fn apply_multiplier(
    mult: &Multiplier,
    module: &ModuleSpec,
    x: &Element,
    w: &Element,
    bound: u32,
) -> Element {
    let field = module.coefficients.field;
    let xdeg = module.algebra.generators[0].degree;
    let mut out = Element::zero();
    match mult {
        Multiplier::Commutator => {
            // x·w - (-1)^{|x||w|} w·x, computed per homogeneous term of w.
            for (mon, c) in &w.terms {
                let wt = Element::term(mon.clone(), c.clone());
                let left = module.act_left(x, &wt);
                let right = module.act_right(&wt, x);
                let wdeg = module.coefficients.monomial_degree(mon);
                let sign = if (xdeg * wdeg).rem_euclid(2) == 1 {
                    field.one().neg()
                } else {
                    field.one()
                };
                out = out.plus(&left.minus(&right.scale(&sign)));
            }
        }
        Multiplier::PowerSum => {
            // Σ_{i+j=n} x^i·w·x^j; the generator has even degree wherever
            // this multiplier is used away from characteristic 2.
            let n = bound;
            for i in 0..=n {
                let j = n - i;
                let xi = module.algebra.power(x, i);
                let xj = module.algebra.power(x, j);
                for (mon, c) in &w.terms {
                    let wt = Element::term(mon.clone(), c.clone());
                    let wdeg = module.coefficients.monomial_degree(mon);
                    let jdeg = xdeg * j as i64;
                    let sign = if (jdeg * wdeg).rem_euclid(2) == 1 {
                        field.one().neg()
                    } else {
                        field.one()
                    };
                    let term = module.act_right(&module.act_left(&xi, &wt), &xj);
                    out = out.plus(&term.scale(&sign));
                }
            }
        }
    }
    out
}

fn fill_blocks(
    cx: &mut FreeComplex,
    s: u32,
    coeff_basis: &[Monomial],
    coeff_alg: &crate::algebra::AlgebraPresentation,
    images: &[Element],
) -> Result<()> {
    let field = cx.field;
    for q in cx.degrees_at(s) {
        let src_idx = cx.indices_at(s, q);
        let tgt_idx = cx.indices_at(s + 1, q);
        if src_idx.is_empty() {
            continue;
        }
        let mut mat = Matrix::zeros(field, tgt_idx.len(), src_idx.len());
        for (col, &ci) in src_idx.iter().enumerate() {
            // ci indexes coeff_basis (stages share the coefficient basis).
            let img = &images[ci];
            for (mon, c) in &img.terms {
                let pos = coeff_basis.iter().position(|b| b == mon).ok_or_else(|| {
                    Error::Certification(format!(
                        "multiplier image leaves the coefficient basis at {}",
                        coeff_alg.format_monomial(mon)
                    ))
                })?;
                let row = tgt_idx.iter().position(|&t| t == pos).ok_or_else(|| {
                    Error::Certification("differential does not preserve internal degree".into())
                })?;
                mat.set(row, col, c.clone());
            }
        }
        cx.set_diff(s, q, mat);
    }
    Ok(())
}
