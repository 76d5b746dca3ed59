//! Hard-coded models.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fusion_ring::{FusionRing, Label};
use crate::linalg::C64;
use crate::model::AnyonModel;

pub const BUILTIN_NAMES: [&str; 2] = ["trivial", "fibonacci"];

pub fn builtin(name: &str) -> Result<AnyonModel> {
    match name {
        "trivial" => Ok(trivial()),
        "fibonacci" => Ok(fibonacci()),
        other => Err(Error::Input(format!(
            "unknown model {other:?}; available: {}",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

pub fn trivial() -> AnyonModel {
    AnyonModel::new(FusionRing::trivial(), [], [], vec![C64::new(1.0, 0.0)]).expect("trivial model is well-formed")
}

/// The golden ratio `(1 + √5) / 2`.
pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// Fibonacci anyons `{1, τ}` with `τ ⊗ τ = 1 ⊕ τ`.
///
/// `F^{τττ}_τ = [[1/φ, 1/√φ], [1/√φ, -1/φ]]` over intermediate `(1, τ)`,
/// `R^{ττ}_1 = e^{-4πi/5}`, `R^{ττ}_τ = e^{3πi/5}`, `θ_τ = e^{4πi/5}`.
pub fn fibonacci() -> AnyonModel {
    let (one, tau) = (Label(0), Label(1));
    let ring = FusionRing::from_quadruples(
        vec!["1".into(), "tau".into()],
        vec![0, 1],
        &[[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 1]],
    )
    .expect("fibonacci ring is well-formed");
    let phi = golden_ratio();
    let re = |x: f64| C64::new(x, 0.0);
    let f = [
        ([tau, tau, tau, one, tau, tau], re(1.0)),
        ([tau, tau, tau, tau, one, one], re(1.0 / phi)),
        ([tau, tau, tau, tau, one, tau], re(1.0 / phi.sqrt())),
        ([tau, tau, tau, tau, tau, one], re(1.0 / phi.sqrt())),
        ([tau, tau, tau, tau, tau, tau], re(-1.0 / phi)),
    ];
    let r = [
        ([tau, tau, one], C64::from_polar(1.0, -4.0 * PI / 5.0)),
        ([tau, tau, tau], C64::from_polar(1.0, 3.0 * PI / 5.0)),
    ];
    let theta = vec![re(1.0), C64::from_polar(1.0, 4.0 * PI / 5.0)];
    AnyonModel::new(ring, f, r, theta).expect("fibonacci model is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(builtin("trivial").unwrap().rank(), 1);
        assert_eq!(builtin("fibonacci").unwrap().rank(), 2);
        let err = builtin("ising").unwrap_err();
        assert!(err.to_string().contains("unknown model"));
        assert!(err.to_string().contains("fibonacci"));
    }

    #[test]
    fn fibonacci_dimensions() {
        let m = fibonacci();
        assert_eq!(m.qdim(Label(0)), 1.0);
        assert!((m.qdim(Label(1)) - golden_ratio()).abs() < 1e-12);
        assert!((m.global_dim_sq() - (2.0 + golden_ratio())).abs() < 1e-12);
    }
}
