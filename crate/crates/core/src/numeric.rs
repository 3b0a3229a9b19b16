//! Small numeric helpers shared by the metric and analysis modules.

use std::cmp::Ordering;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Sum that does not depend on the order of `values`: the values are sorted
/// before compensated accumulation.
pub(crate) fn order_free_sum(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let mut acc = CompensatedSum::default();
    for &v in values.iter() {
        acc.add(v);
    }
    acc.total()
}

pub(crate) fn order_free_mean(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    Some(order_free_sum(values) / values.len() as f64)
}

/// Lower median by selection: the element of rank `(n - 1) / 2`.
///
/// The result is always a member of the sample, so it falls in a histogram bin
/// with positive mass.
pub(crate) fn lower_median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mid = (values.len() - 1) / 2;
    let (_, m, _) = values.select_nth_unstable_by(mid, |a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    Some(*m)
}

/// Number of bins of width `width` covering [0, 1], if `width` divides 1.
pub(crate) fn bin_count(width: f64) -> Option<usize> {
    if !(width > 0.0 && width <= 1.0) {
        return None;
    }
    let bins = (1.0 / width).round();
    if (bins * width - 1.0).abs() > 1e-9 {
        return None;
    }
    Some(bins as usize)
}
