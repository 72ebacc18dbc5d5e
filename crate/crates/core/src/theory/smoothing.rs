use crate::error::{Error, Result};
use crate::model::{CurveKind, FidelityCurve};

/// Default Gaussian width, in kicks.
pub const DEFAULT_SIGMA: f64 = 6.0;

/// Kernel is cut off beyond this many standard deviations.
const CUTOFF_SIGMAS: f64 = 12.0;

/// Convolve a curve with a unit-area Gaussian of standard deviation `sigma`
/// kicks.
///
/// Fidelity is defined at integer kick counts only, so the convolution is a
/// discrete sum over the samples. Weights are renormalised over the samples
/// that exist, which keeps constants fixed at the ends of the record. A
/// non-finite sample has no finite convolution and is reported as
/// [`Error::NonIntegrable`].
pub fn smooth_curve(curve: &FidelityCurve, sigma: f64) -> Result<FidelityCurve> {
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::invalid("sigma", format!("must be positive, got {sigma}")));
    }
    if let Some(&t) = curve.singular_times().first() {
        return Err(Error::NonIntegrable { t });
    }
    let spacing = curve
        .uniform_spacing()
        .ok_or_else(|| Error::invalid("times", "smoothing needs a uniform time grid"))?;
    let times = curve.times();
    let values = curve.values();
    let n = times.len();
    let reach = (CUTOFF_SIGMAS * sigma / f64::from(spacing)).ceil() as usize;
    let kernel: Vec<f64> = (0..=reach)
        .map(|d| {
            let x = d as f64 * f64::from(spacing) / sigma;
            (-0.5 * x * x).exp()
        })
        .collect();

    let smoothed = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(reach);
            let hi = (i + reach).min(n.saturating_sub(1));
            let (mut acc, mut weight) = (0.0, 0.0);
            for j in lo..=hi {
                let w = kernel[i.abs_diff(j)];
                acc += w * values[j];
                weight += w;
            }
            acc / weight
        })
        .collect();
    FidelityCurve::new(times.to_vec(), smoothed, CurveKind::Smoothed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_are_preserved() {
        let c = FidelityCurve::new((0..200).collect(), vec![0.37; 200], CurveKind::Numeric).unwrap();
        let s = smooth_curve(&c, 6.0).unwrap();
        assert!(s.values().iter().all(|v| (v - 0.37).abs() < 1e-15));
        assert_eq!(s.kind(), CurveKind::Smoothed);
    }

    #[test]
    fn spike_spreads_into_gaussian_of_same_area() {
        let mut values = vec![0.0; 301];
        values[150] = 2.5;
        let c = FidelityCurve::new((0..301).collect(), values, CurveKind::AnalyticHarmonicResonant)
            .unwrap();
        let sigma = 6.0;
        let s = smooth_curve(&c, sigma).unwrap();
        let area: f64 = s.values().iter().sum();
        assert!((area - 2.5).abs() < 1e-12);
        let mean: f64 = s.iter().map(|(t, v)| f64::from(t) * v).sum::<f64>() / area;
        let var: f64 = s.iter().map(|(t, v)| (f64::from(t) - mean).powi(2) * v).sum::<f64>() / area;
        assert!((mean - 150.0).abs() < 1e-9);
        assert!((var.sqrt() - sigma).abs() < 1e-6);
    }

    #[test]
    fn singular_samples_are_rejected() {
        let c = FidelityCurve::new(
            vec![1, 2, 3],
            vec![0.1, f64::INFINITY, 0.2],
            CurveKind::AnalyticHarmonicResonant,
        )
        .unwrap();
        assert_eq!(smooth_curve(&c, 6.0), Err(Error::NonIntegrable { t: 2 }));
    }

    #[test]
    fn rejects_bad_sigma_and_irregular_grids() {
        let c = FidelityCurve::new(vec![1, 2, 4], vec![0.1, 0.2, 0.3], CurveKind::Numeric).unwrap();
        assert!(smooth_curve(&c, 0.0).is_err());
        assert!(smooth_curve(&c, 6.0).is_err());
    }
}
