use super::ReflexiveSystem;
use crate::expr::{ExprError, Expression};
use crate::scalar::Scalar;

/// A real map of one variable that can fail numerically.
pub trait ScalarMap<T: Scalar> {
    fn apply(&self, x: T) -> Result<T, ExprError>;
}

/// A [`ScalarMap`] with a pointwise derivative.
pub trait DifferentiableMap<T: Scalar>: ScalarMap<T> {
    fn slope(&self, x: T) -> Result<T, ExprError>;
}

impl<T: Scalar> ScalarMap<T> for Expression {
    fn apply(&self, x: T) -> Result<T, ExprError> {
        self.evaluate(x)
    }
}

impl<T: Scalar> DifferentiableMap<T> for Expression {
    fn slope(&self, x: T) -> Result<T, ExprError> {
        self.derivative(x)
    }
}

impl<T: Scalar, F> ScalarMap<T> for F
where
    F: Fn(T) -> Result<T, ExprError>,
{
    fn apply(&self, x: T) -> Result<T, ExprError> {
        self(x)
    }
}

/// `Γ = φ∘f`, acting on x.
#[derive(Debug, Clone, Copy)]
pub struct Gamma<'a, T> {
    system: &'a ReflexiveSystem<T>,
}

/// `Φ = f∘φ`, acting on y.
#[derive(Debug, Clone, Copy)]
pub struct PhiMap<'a, T> {
    system: &'a ReflexiveSystem<T>,
}

pub fn compose_gamma<T: Scalar>(system: &ReflexiveSystem<T>) -> Gamma<'_, T> {
    Gamma { system }
}

pub fn compose_phi_map<T: Scalar>(system: &ReflexiveSystem<T>) -> PhiMap<'_, T> {
    PhiMap { system }
}

impl<T: Scalar> ScalarMap<T> for Gamma<'_, T> {
    fn apply(&self, x: T) -> Result<T, ExprError> {
        self.system.eval_phi(self.system.eval_f(x)?)
    }
}

impl<T: Scalar> DifferentiableMap<T> for Gamma<'_, T> {
    /// `Γ'(x) = φ'(f(x))·f'(x)`.
    fn slope(&self, x: T) -> Result<T, ExprError> {
        let y = self.system.eval_f(x)?;
        Ok(self.system.phi().derivative(y)? * self.system.f().derivative(x)?)
    }
}

impl<T: Scalar> ScalarMap<T> for PhiMap<'_, T> {
    fn apply(&self, y: T) -> Result<T, ExprError> {
        self.system.eval_f(self.system.eval_phi(y)?)
    }
}

impl<T: Scalar> DifferentiableMap<T> for PhiMap<'_, T> {
    /// `Φ'(y) = f'(φ(y))·φ'(y)`.
    fn slope(&self, y: T) -> Result<T, ExprError> {
        let x = self.system.eval_phi(y)?;
        Ok(self.system.f().derivative(x)? * self.system.phi().derivative(y)?)
    }
}

#[cfg(test)]
mod tests {
    use super::super::Interval;
    use super::*;

    fn sys(f: &str, phi: &str) -> ReflexiveSystem<f64> {
        let d = Interval::new(-10.0, 10.0).unwrap();
        ReflexiveSystem::from_sources(f, phi, d, Interval::new(-20.0, 20.0).unwrap()).unwrap()
    }

    #[test]
    fn gamma_examples() {
        let s = sys("2*x", "y/2");
        assert_eq!(compose_gamma(&s).apply(5.0).unwrap(), 5.0);
        let s = sys("cos(x)", "y");
        assert_eq!(compose_gamma(&s).apply(0.0).unwrap(), 1.0);
        let s = sys("2*x", "0.4*y");
        for x in [-3.0, 0.0, 1.5, 9.0] {
            assert!((compose_gamma(&s).slope(x).unwrap() - 0.8).abs() < 1e-15);
        }
    }

    #[test]
    fn phi_map_examples() {
        let s = sys("2*x", "y/2");
        assert_eq!(compose_phi_map(&s).apply(7.0).unwrap(), 7.0);
        let s = sys("cos(x)", "y");
        assert!((compose_phi_map(&s).apply(1.0).unwrap() - 0.5403).abs() < 1e-4);
        let s = sys("2*x", "0.4*y");
        for y in [-3.0, 0.0, 1.5, 9.0] {
            assert!((compose_phi_map(&s).slope(y).unwrap() - 0.8).abs() < 1e-15);
        }
    }

    #[test]
    fn chain_rule_matches_central_difference() {
        let s = sys("sin(x) + 0.3*x^2", "tanh(y) - 0.1*y");
        let g = compose_gamma(&s);
        let p = compose_phi_map(&s);
        let h = 1e-6;
        for v in [-1.3, -0.2, 0.4, 2.1] {
            let fd = (g.apply(v + h).unwrap() - g.apply(v - h).unwrap()) / (2.0 * h);
            assert!((g.slope(v).unwrap() - fd).abs() < 1e-8);
            let fd = (p.apply(v + h).unwrap() - p.apply(v - h).unwrap()) / (2.0 * h);
            assert!((p.slope(v).unwrap() - fd).abs() < 1e-8);
        }
    }

    #[test]
    fn closures_are_maps() {
        let m = |x: f64| -> Result<f64, ExprError> { Ok(x + 1.0) };
        assert_eq!(m.apply(1.0).unwrap(), 2.0);
    }
}
