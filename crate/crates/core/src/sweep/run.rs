use rayon::prelude::*;

use super::{Family, Param, SweepError, SweepSpec};
use crate::channels::{accelerate_then_filter, AccelerationParams, FilterParams};
use crate::error::Error;
use crate::qstate::{self, BlochDecomposition, DensityMatrix4, PureFamilyParams, WernerParams};
use crate::steering::{steerability_report, SteeringReport};

/// One evaluated grid point.
///
/// `p`/`q` are only set for the generic pure family and `c11..c33` only for
/// the Werner and explicit families. A point whose filter annihilates the
/// state keeps `n` but has no report. A point whose state parameters are
/// unphysical has neither.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub family: Family,
    pub r_a: f64,
    pub r_b: f64,
    pub alpha_a: f64,
    pub alpha_b: f64,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub c11: Option<f64>,
    pub c22: Option<f64>,
    pub c33: Option<f64>,
    pub n: Option<f64>,
    pub report: Option<SteeringReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointStatus {
    Ok,
    DegenerateFilter,
    Unphysical,
}

impl SweepRow {
    pub fn status(&self) -> PointStatus {
        match (self.n, self.report) {
            (_, Some(_)) => PointStatus::Ok,
            (Some(_), None) => PointStatus::DegenerateFilter,
            (None, None) => PointStatus::Unphysical,
        }
    }
}

/// Parameter values for one point, indexed by `Param as usize`.
#[derive(Clone, Copy)]
struct Values([Option<f64>; Param::COUNT]);

impl Values {
    fn get(&self, p: Param) -> Option<f64> {
        self.0[p as usize]
    }

    fn or(&self, p: Param, default: f64) -> f64 {
        self.get(p).unwrap_or(default)
    }
}

fn build_state(family: Family, v: &Values) -> Result<DensityMatrix4, Error> {
    match family {
        Family::Werner => qstate::werner(&WernerParams::new(
            v.or(Param::C11, 0.0),
            v.or(Param::C22, 0.0),
            v.or(Param::C33, 0.0),
        )?),
        Family::GenericPure => {
            let f = match v.get(Param::P) {
                Some(p) => PureFamilyParams::from_p(p)?,
                None => PureFamilyParams::from_q(v.or(Param::Q, 1.0))?,
            };
            Ok(qstate::generic_pure(&f))
        }
        Family::Explicit => {
            use Param::*;
            let d = BlochDecomposition {
                s: [v.or(Sx, 0.0), v.or(Sy, 0.0), v.or(Sz, 0.0)],
                t: [v.or(Tx, 0.0), v.or(Ty, 0.0), v.or(Tz, 0.0)],
                c: [
                    [v.or(C11, 0.0), v.or(C12, 0.0), v.or(C13, 0.0)],
                    [v.or(C21, 0.0), v.or(C22, 0.0), v.or(C23, 0.0)],
                    [v.or(C31, 0.0), v.or(C32, 0.0), v.or(C33, 0.0)],
                ],
            };
            qstate::from_bloch(&d)
        }
    }
}

fn evaluate(
    family: Family,
    v: &Values,
    prebuilt: Option<&DensityMatrix4>,
) -> Result<SweepRow, SweepError> {
    let alpha = v.or(Param::Alpha, 0.5);
    let mut row = SweepRow {
        family,
        r_a: v.or(Param::RA, 0.0),
        r_b: v.or(Param::RB, 0.0),
        alpha_a: v.or(Param::AlphaA, alpha),
        alpha_b: v.or(Param::AlphaB, alpha),
        p: None,
        q: None,
        c11: None,
        c22: None,
        c33: None,
        n: None,
        report: None,
    };
    match family {
        Family::GenericPure => {
            let f = match v.get(Param::P) {
                Some(p) => PureFamilyParams::from_p(p)?,
                None => PureFamilyParams::from_q(v.or(Param::Q, 1.0))?,
            };
            row.p = Some(f.p());
            row.q = Some(f.q());
        }
        Family::Werner | Family::Explicit => {
            row.c11 = Some(v.or(Param::C11, 0.0));
            row.c22 = Some(v.or(Param::C22, 0.0));
            row.c33 = Some(v.or(Param::C33, 0.0));
        }
    }

    let built;
    let rho = match prebuilt {
        Some(rho) => rho,
        None => match build_state(family, v) {
            Ok(rho) => {
                built = rho;
                &built
            }
            Err(Error::NotPositive(_)) => return Ok(row),
            Err(e) => return Err(e.into()),
        },
    };

    let acc = AccelerationParams::new(row.r_a, row.r_b)?;
    let fp = FilterParams::new(row.alpha_a, row.alpha_b)?;
    match accelerate_then_filter(rho, &acc, &fp) {
        Ok((filtered, n)) => {
            row.n = Some(n);
            row.report = Some(steerability_report(&filtered)?);
        }
        Err(Error::DegenerateFilter(n)) => row.n = Some(n),
        Err(e) => return Err(e.into()),
    }
    Ok(row)
}

/// Evaluates one point given as a complete `SweepSpec` with an empty grid.
pub fn evaluate_point(spec: &SweepSpec) -> Result<SweepRow, SweepError> {
    let mut rows = run_sweep(spec)?;
    if rows.len() != 1 {
        return Err(SweepError::domain(
            "grid",
            "single-point evaluation takes no grid axes",
        ));
    }
    Ok(rows.remove(0))
}

/// Runs every grid point of `spec`.
///
/// Rows come back in lexicographic order over the grid axes as declared (the
/// first axis varies slowest), independent of how rayon schedules the work.
/// Fails only if `spec` is invalid or the fixed family parameters describe
/// an unphysical state. Unphysical grid points and annihilating filters
/// become flagged rows.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    spec.validate()?;

    let mut base = Values([None; Param::COUNT]);
    for (&p, &v) in &spec.fixed {
        base.0[p as usize] = Some(v);
    }

    let state_on_grid = spec.grid.iter().any(|a| spec.family.accepts(a.param));
    let prebuilt = if state_on_grid {
        None
    } else {
        Some(build_state(spec.family, &base)?)
    };

    let axes: Vec<(Param, Vec<f64>)> = spec.grid.iter().map(|a| (a.param, a.values())).collect();
    let total = spec.point_count();

    (0..total)
        .into_par_iter()
        .map(|index| {
            let mut v = base;
            let mut rest = index;
            for (param, values) in axes.iter().rev() {
                v.0[*param as usize] = Some(values[rest % values.len()]);
                rest /= values.len();
            }
            evaluate(spec.family, &v, prebuilt.as_ref())
        })
        .collect()
}
