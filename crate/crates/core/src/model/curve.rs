use std::fmt;

use crate::error::{Error, Result};

/// Where the values of a [`FidelityCurve`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveKind {
    Numeric,
    AnalyticExactResonance,
    AnalyticPseudoclassical,
    AnalyticHarmonicEnsemble,
    AnalyticHarmonicResonant,
    Smoothed,
}

impl CurveKind {
    pub fn is_numeric(self) -> bool {
        self == CurveKind::Numeric
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CurveKind::Numeric => "numeric",
            CurveKind::AnalyticExactResonance => "analytic_exact_resonance",
            CurveKind::AnalyticPseudoclassical => "analytic_pseudoclassical",
            CurveKind::AnalyticHarmonicEnsemble => "analytic_harmonic_ensemble",
            CurveKind::AnalyticHarmonicResonant => "analytic_harmonic_resonant",
            CurveKind::Smoothed => "smoothed",
        };
        f.write_str(name)
    }
}

/// Numeric fidelity may overshoot 1 by rounding only.
pub const NUMERIC_UPPER_SLACK: f64 = 1e-9;

/// Fidelity sampled at integer kick counts.
///
/// Analytic curves may carry values above one, or `+inf` at singular
/// samples; those are kept as-is.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityCurve {
    times: Vec<u32>,
    values: Vec<f64>,
    kind: CurveKind,
}

impl FidelityCurve {
    pub fn new(times: Vec<u32>, values: Vec<f64>, kind: CurveKind) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::invalid(
                "values",
                format!("{} values for {} times", values.len(), times.len()),
            ));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("times", "must be strictly increasing"));
        }
        if kind.is_numeric() {
            if let Some((t, v)) = times
                .iter()
                .zip(&values)
                .find(|(_, &v)| !(0.0..=1.0 + NUMERIC_UPPER_SLACK).contains(&v))
            {
                return Err(Error::invalid(
                    "values",
                    format!("numeric fidelity {v} at t = {t} outside [0, 1]"),
                ));
            }
        }
        Ok(Self { times, values, kind })
    }

    /// Evaluate `f` at every `t` in `range`.
    pub fn tabulate(
        range: impl IntoIterator<Item = u32>,
        kind: CurveKind,
        mut f: impl FnMut(u32) -> Result<f64>,
    ) -> Result<Self> {
        let times: Vec<u32> = range.into_iter().collect();
        let values = times.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        Self::new(times, values, kind)
    }

    pub fn times(&self) -> &[u32] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn value_at(&self, t: u32) -> Option<f64> {
        self.times.binary_search(&t).ok().map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }

    /// Drop samples with `t < t_min`.
    pub fn starting_at(&self, t_min: u32) -> Self {
        let start = self.times.partition_point(|&t| t < t_min);
        Self {
            times: self.times[start..].to_vec(),
            values: self.values[start..].to_vec(),
            kind: self.kind,
        }
    }

    /// Times whose value is not finite.
    pub fn singular_times(&self) -> Vec<u32> {
        self.iter().filter(|(_, v)| !v.is_finite()).map(|(t, _)| t).collect()
    }

    /// Largest sample with `lo <= t <= hi`, as `(t, value)`.
    pub fn argmax_in(&self, lo: u32, hi: u32) -> Option<(u32, f64)> {
        self.iter()
            .filter(|(t, _)| (lo..=hi).contains(t))
            .fold(None, |best: Option<(u32, f64)>, (t, v)| match best {
                Some((_, bv)) if bv >= v => best,
                _ => Some((t, v)),
            })
    }

    /// Interior samples strictly larger than both neighbours.
    pub fn local_maxima(&self) -> Vec<(u32, f64)> {
        self.values
            .windows(3)
            .enumerate()
            .filter(|(_, w)| w[1] > w[0] && w[1] > w[2])
            .map(|(i, w)| (self.times[i + 1], w[1]))
            .collect()
    }

    /// Constant sample spacing, if the time grid is uniform.
    pub fn uniform_spacing(&self) -> Option<u32> {
        let step = match self.times.as_slice() {
            [a, b, ..] => b - a,
            _ => return Some(1),
        };
        self.times.windows(2).all(|w| w[1] - w[0] == step).then_some(step)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_curves_are_bounded() {
        assert!(FidelityCurve::new(vec![1, 2], vec![0.5, 1.1], CurveKind::Numeric).is_err());
        assert!(FidelityCurve::new(vec![1, 2], vec![0.5, 1.0 + 1e-12], CurveKind::Numeric).is_ok());
        let analytic = FidelityCurve::new(
            vec![1, 2],
            vec![3.0, f64::INFINITY],
            CurveKind::AnalyticHarmonicResonant,
        )
        .unwrap();
        assert_eq!(analytic.singular_times(), vec![2]);
    }

    #[test]
    fn times_must_increase() {
        assert!(FidelityCurve::new(vec![2, 2], vec![0.1, 0.2], CurveKind::Numeric).is_err());
        assert!(FidelityCurve::new(vec![1], vec![0.1, 0.2], CurveKind::Numeric).is_err());
    }

    #[test]
    fn peak_helpers() {
        let c = FidelityCurve::new(
            (0..7).collect(),
            vec![0.0, 0.4, 0.1, 0.2, 0.9, 0.3, 0.5],
            CurveKind::Numeric,
        )
        .unwrap();
        assert_eq!(c.local_maxima(), vec![(1, 0.4), (4, 0.9)]);
        assert_eq!(c.argmax_in(0, 3), Some((1, 0.4)));
        assert_eq!(c.argmax_in(5, 6), Some((6, 0.5)));
        assert_eq!(c.argmax_in(10, 20), None);
        assert_eq!(c.value_at(4), Some(0.9));
        assert_eq!(c.starting_at(5).times(), &[5, 6]);
        assert_eq!(c.uniform_spacing(), Some(1));
    }
}
