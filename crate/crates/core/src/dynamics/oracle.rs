use crate::error::Result;
use crate::phase::{Coordinate, GcsState, PhaseFunction, PoissonStructure};

use super::eom::StateDerivative;

/// ẋ = {H, x} for every coordinate function x, evaluated through the
/// bracket engine.
pub fn hamiltonian_flow_oracle(
    st: &GcsState,
    ps: &PoissonStructure,
    h: &dyn PhaseFunction,
) -> Result<StateDerivative> {
    let dh = h.gradient(st)?;
    let (l, m) = (st.u.len(), st.t.len());
    let flat: Vec<f64> = (0..st.dim())
        .map(|k| {
            let dx = Coordinate(k).gradient(st)?;
            Ok(ps.bracket_gradients(st, &dh, &dx))
        })
        .collect::<Result<_>>()?;
    Ok(StateDerivative::from_flat(l, m, &flat))
}
