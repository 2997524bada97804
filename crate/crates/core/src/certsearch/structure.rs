use super::{parametrized_sdp, SearchError, Verdict};
use crate::exactmath::{rref, LinearEquation, Rational};
use crate::rhocalc::{binomial, build_f_system, default_priority, gram_size, FVar};
use crate::sdpsolve::{feasibility, Feasibility, SdpSettings};

pub const STRUCTURE_TRACE_BOUND: f64 = 1e4;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureReport {
    /// Identities proved by exact elimination.
    pub exact: Verdict,
    /// SDP outcomes; numerical evidence only.
    pub numerical: Verdict,
}

/// Forced entries for even d, and for odd d that `F_{1,1}` stays free while
/// `F_{1,1} = d − 1` leaves no PSD completion.
pub fn check_structure_identities(
    ds: impl IntoIterator<Item = usize>,
    settings: &SdpSettings,
) -> Result<StructureReport, SearchError> {
    let mut report = StructureReport::default();
    for d in ds {
        if !(3..=14).contains(&d) {
            return Err(SearchError::UnsupportedD(d));
        }
        let m = gram_size(d);
        let priority = default_priority(m);
        let eqs = build_f_system(d)?.linear_equations();
        let space = rref(&eqs, &priority)?;
        let forced = |v: FVar| {
            let e = space.expr(&v);
            e.is_constant().then_some(e.constant)
        };
        let show = |x: &Option<Rational>| x.as_ref().map_or("not forced".to_string(), Rational::to_string);
        let f11 = FVar::new(1, 1);
        if d % 2 == 0 {
            let want = Rational::from(d - 1);
            let got = forced(f11);
            report.exact.push(format!("d={d} F_1_1 = d-1"), got.as_ref() == Some(&want), show(&got));
            let fmm = Rational::from(d) / Rational::from(binomial(d, d / 2));
            let got = forced(FVar::new(m, m));
            report.exact.push(format!("d={d} F_m_m = d/C(d,d/2)"), got.as_ref() == Some(&fmm), format!("{} vs {fmm}", show(&got)));
            let off = -(&fmm * (Rational::one() + Rational::new(d as i64, 4)));
            let got = forced(FVar::new(m - 1, m));
            report.exact.push(
                format!("d={d} F_m-1_m = -F_m_m(1+d/4)"),
                got.as_ref() == Some(&off),
                format!("{} vs {off}", show(&got)),
            );
        } else {
            report.exact.push(format!("d={d} F_1_1 free"), space.is_free(&f11), "");
            let mut fixed = eqs.clone();
            fixed.push(LinearEquation::fix(f11, Rational::from(d - 1)));
            let (passed, detail) = match rref(&fixed, &priority) {
                Err(_) => (true, "linear system inconsistent".to_string()),
                Ok(s) => match feasibility(&parametrized_sdp(&s, m, Some(STRUCTURE_TRACE_BOUND)), settings)? {
                    Feasibility::LikelyInfeasible { measure } => (true, format!("likely infeasible, violation {measure:.3e}")),
                    Feasibility::Feasible { measure, .. } => (false, format!("feasible, violation {measure:.3e}")),
                },
            };
            report.numerical.push(format!("d={d} F_1_1 = d-1 excluded"), passed, detail);
        }
    }
    Ok(report)
}
