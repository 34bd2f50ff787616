//! `η(f, g)` computed along independent routes.

use super::records::{askey_product, eta_closed, eta_quadrature, ismail_masson_integral};
use super::{EvalContext, ParameterPoint, PeriodicWeight, Side};
use crate::error::{QError, QResult};
use crate::foldquad::QuadratureConfig;
use crate::qcore::{CNum, QBase};

#[derive(Clone, Debug, PartialEq)]
pub struct EtaChain {
    /// Closed product form.
    pub closed: CNum,
    /// Quadrature over one period.
    pub quadrature: CNum,
    /// Ismail-Masson integral divided by the Askey product, one entry per
    /// `(a, b, c, d)`. Independent of the choice.
    pub via_abcd: Vec<CNum>,
}

impl EtaChain {
    /// Largest relative distance of any route from the closed form.
    pub fn spread(&self) -> f64 {
        std::iter::once(self.quadrature)
            .chain(self.via_abcd.iter().copied())
            .map(|v| (v - self.closed).norm() / self.closed.norm())
            .fold(0.0, f64::max)
    }
}

/// `point` must carry `f` and `g`; each entry of `abcds` needs
/// `|abcd/q^3| < 1`.
pub fn eta_chain(point: &ParameterPoint, abcds: &[[CNum; 4]]) -> QResult<EtaChain> {
    let f = point.get("f").ok_or_else(|| QError::OutsideDomain("missing parameter f".into()))?;
    let g = point.get("g").ok_or_else(|| QError::OutsideDomain("missing parameter g".into()))?;
    let q = QBase::new(point.q)?;
    let one = PeriodicWeight::one();
    let cx = EvalContext { point, q, weight: &one, quad: QuadratureConfig::default().sequential() };
    let mut side = Side::new();
    let quadrature = eta_quadrature(&cx, f, g, &mut side)?;
    let mut via_abcd = Vec::with_capacity(abcds.len());
    for &p in abcds {
        if (p[0] * p[1] * p[2] * p[3]).norm() >= point.q.powi(3) {
            return Err(QError::OutsideDomain("|abcd/q^3| >= 1".into()));
        }
        via_abcd.push(ismail_masson_integral(&cx, p, f, g, &mut side)? / askey_product(p, &q)?);
    }
    Ok(EtaChain { closed: eta_closed(f, g, &q)?, quadrature, via_abcd })
}
