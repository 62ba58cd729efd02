use crate::circuit::{Circuit, GateKind};
use crate::error::Result;

use super::dataset::DataPoint;

/// Branch norms below this are treated as empty.
const EMPTY_BRANCH: f64 = 1e-12;

/// Circuit preparing the amplitude-encoded state of `point` from `|0...0>`.
///
/// 2D: `RY(2 atan2(x2, x1))`. 4D: `RY(alpha)` on qubit 0 splits the weight of
/// `(x1, x2)` against `(x3, x4)`; a uniformly controlled `RY` on qubit 1 then applies
/// `beta` on the `|0>` branch and `gamma` on the `|1>` branch as
/// `RY((beta+gamma)/2) CX RY((beta-gamma)/2) CX`.
///
/// An empty branch has no defined angle; it copies its sibling so the controlled
/// rotation collapses to a plain one.
pub fn amplitude_encode(point: &DataPoint) -> Result<Circuit> {
    point.validate()?;
    let x = &point.features;
    if x.len() == 2 {
        let mut c = Circuit::new(1);
        c.add(GateKind::RY(2.0 * x[1].atan2(x[0])), &[0])?;
        return Ok(c);
    }
    let n0 = x[0].hypot(x[1]);
    let n1 = x[2].hypot(x[3]);
    let alpha = 2.0 * n1.atan2(n0);
    let raw_beta = (n0 > EMPTY_BRANCH).then(|| 2.0 * x[1].atan2(x[0]));
    let raw_gamma = (n1 > EMPTY_BRANCH).then(|| 2.0 * x[3].atan2(x[2]));
    let beta = raw_beta.or(raw_gamma).unwrap_or(0.0);
    let gamma = raw_gamma.unwrap_or(beta);
    let mut c = Circuit::new(2);
    c.add(GateKind::RY(alpha), &[0])?
        .add(GateKind::RY((beta + gamma) / 2.0), &[1])?
        .add(GateKind::CX, &[0, 1])?
        .add(GateKind::RY((beta - gamma) / 2.0), &[1])?
        .add(GateKind::CX, &[0, 1])?;
    Ok(c)
}
