use num_complex::Complex64;

use crate::error::{Error, Result};

/// Momentum-basis truncation settings shared by every propagation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolution {
    /// Basis covers `n` in `[-n_max, n_max]`.
    pub n_max: usize,
    /// Width of the band at the basis edge whose population is monitored.
    pub n_guard: usize,
    /// Largest population tolerated in the guard band.
    pub tail_tol: f64,
    /// Upper limit for automatic doubling of `n_max`.
    pub max_n_max: usize,
}

impl Default for Resolution {
    fn default() -> Self {
        Self {
            n_max: 128,
            n_guard: 16,
            tail_tol: 1e-12,
            max_n_max: 8192,
        }
    }
}

impl Resolution {
    /// Default settings around a given basis size; the guard band shrinks
    /// to half the basis for very small `n_max`.
    pub fn with_n_max(n_max: usize) -> Self {
        let defaults = Self::default();
        Self {
            n_max,
            n_guard: defaults.n_guard.min(n_max / 2),
            ..defaults
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 {
            return Err(Error::invalid("n_max", "must be at least 1"));
        }
        if self.n_guard > self.n_max {
            return Err(Error::invalid("n_guard", "guard band wider than the basis"));
        }
        if self.tail_tol.is_nan() || self.tail_tol <= 0.0 {
            return Err(Error::invalid("tail_tol", "must be positive"));
        }
        Ok(())
    }
}

/// Rotor wave function in the truncated angular-momentum basis.
///
/// `amplitudes[i]` is the coefficient of `|n>` with `n = i - n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotorState {
    n_max: usize,
    amplitudes: Vec<Complex64>,
}

impl RotorState {
    /// The uniform angular state `(2 pi)^(-1/2)`, i.e. `|n = 0>`.
    pub fn initial(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::invalid("n_max", "must be at least 1"));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 2 * n_max + 1];
        amplitudes[n_max] = Complex64::new(1.0, 0.0);
        Ok(Self { n_max, amplitudes })
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < 3 || amplitudes.len().is_multiple_of(2) {
            return Err(Error::invalid(
                "amplitudes",
                format!("length must be 2 n_max + 1 with n_max >= 1, got {}", amplitudes.len()),
            ));
        }
        Ok(Self {
            n_max: amplitudes.len() / 2,
            amplitudes,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn amplitude(&self, n: i64) -> Complex64 {
        self.index_of(n)
            .map(|i| self.amplitudes[i])
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn population(&self, n: i64) -> f64 {
        self.amplitude(n).norm_sqr()
    }

    fn index_of(&self, n: i64) -> Option<usize> {
        let i = n + self.n_max as i64;
        (0..self.amplitudes.len() as i64).contains(&i).then_some(i as usize)
    }

    pub fn momenta(&self) -> impl Iterator<Item = i64> {
        let n = self.n_max as i64;
        -n..=n
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self | other>`, antilinear in `self`.
    pub fn inner(&self, other: &RotorState) -> Result<Complex64> {
        if self.n_max != other.n_max {
            return Err(Error::DimensionMismatch {
                expected: self.n_max,
                found: other.n_max,
            });
        }
        Ok(inner_product(&self.amplitudes, &other.amplitudes))
    }

    /// Population with `|n| >= n_max - n_guard`.
    pub fn tail_population(&self, n_guard: usize) -> f64 {
        let inner = self.n_max.saturating_sub(n_guard);
        self.momenta()
            .zip(&self.amplitudes)
            .filter(|(n, _)| n.unsigned_abs() as usize >= inner)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Re-express the state in a wider basis.
    pub fn widened(&self, n_max: usize) -> Result<Self> {
        if n_max < self.n_max {
            return Err(Error::invalid("n_max", "cannot narrow a state"));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 2 * n_max + 1];
        let offset = n_max - self.n_max;
        amplitudes[offset..offset + self.amplitudes.len()].copy_from_slice(&self.amplitudes);
        Ok(Self { n_max, amplitudes })
    }
}

pub(crate) fn inner_product(bra: &[Complex64], ket: &[Complex64]) -> Complex64 {
    bra.iter().zip(ket).map(|(a, b)| a.conj() * b).sum()
}

/// Free function form of [`RotorState::initial`].
pub fn initial_state(n_max: usize) -> Result<RotorState> {
    RotorState::initial(n_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_state_is_zero_momentum() {
        let s = initial_state(8).unwrap();
        assert_eq!(s.dim(), 17);
        assert_eq!(s.amplitudes()[8], Complex64::new(1.0, 0.0));
        assert_eq!(s.norm_sqr(), 1.0);

        let s = initial_state(1).unwrap();
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(s.amplitudes(), &[zero, Complex64::new(1.0, 0.0), zero]);
    }

    #[test]
    fn rejects_empty_basis() {
        assert!(initial_state(0).is_err());
        assert!(RotorState::from_amplitudes(vec![Complex64::new(1.0, 0.0); 4]).is_err());
    }

    #[test]
    fn tail_counts_both_edges() {
        let mut s = initial_state(20).unwrap();
        let a = s.amplitudes_mut();
        a[0] = Complex64::new(0.1, 0.0);
        a[40] = Complex64::new(0.0, 0.2);
        a[20] = Complex64::new(0.0, 0.0);
        assert!((s.tail_population(4) - 0.05).abs() < 1e-15);
        assert_eq!(s.population(-20), 0.1 * 0.1);
        assert_eq!(s.population(21), 0.0);
    }

    #[test]
    fn widening_keeps_momenta() {
        let mut s = initial_state(2).unwrap();
        s.amplitudes_mut()[0] = Complex64::new(0.5, 0.5);
        let w = s.widened(5).unwrap();
        assert_eq!(w.amplitude(-2), Complex64::new(0.5, 0.5));
        assert_eq!(w.amplitude(0), Complex64::new(1.0, 0.0));
        assert_eq!(w.dim(), 11);
    }

    #[test]
    fn inner_product_requires_same_basis() {
        let a = initial_state(3).unwrap();
        let b = initial_state(4).unwrap();
        assert!(a.inner(&b).is_err());
        assert_eq!(a.inner(&a).unwrap(), Complex64::new(1.0, 0.0));
    }
}
