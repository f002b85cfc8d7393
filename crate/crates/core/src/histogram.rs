use crate::error::{Error, Result};

/// How [`Histogram::heights`] scales bin counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Counts,
    /// `count / (total * width)`; integrates to the in-range fraction.
    Density,
}

/// Right-open bins `[lo, hi)` plus a single bucket for everything outside
/// `[edges[0], edges[last])`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    edges: Vec<f64>,
    counts: Vec<u64>,
    overflow: u64,
    total: u64,
}

/// `bins + 1` equally spaced edges on `[lo, hi]`.
pub fn uniform_edges(lo: f64, hi: f64, bins: usize) -> Result<Vec<f64>> {
    if bins == 0 || !(hi > lo) {
        return Err(Error::InvalidArgument(format!(
            "need hi > lo and at least one bin (lo={lo}, hi={hi}, bins={bins})"
        )));
    }
    let width = (hi - lo) / bins as f64;
    let mut edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
    edges[bins] = hi;
    Ok(edges)
}

impl Histogram {
    pub fn empty(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 {
            return Err(Error::BadEdges { index: edges.len() });
        }
        if let Some(i) = edges
            .windows(2)
            .position(|w| !(w[1] > w[0]) || !w[0].is_finite() || !w[1].is_finite())
        {
            return Err(Error::BadEdges { index: i + 1 });
        }
        let bins = edges.len() - 1;
        Ok(Self {
            edges,
            counts: vec![0; bins],
            overflow: 0,
            total: 0,
        })
    }

    pub fn from_values(values: &[f64], edges: Vec<f64>) -> Result<Self> {
        let mut h = Self::empty(edges)?;
        h.extend(values.iter().copied());
        Ok(h)
    }

    /// Rebuilds a histogram from stored columns, e.g. after reading a CSV.
    pub fn from_parts(edges: Vec<f64>, counts: Vec<u64>, overflow: u64) -> Result<Self> {
        let mut h = Self::empty(edges)?;
        if counts.len() != h.counts.len() {
            return Err(Error::InvalidArgument(format!(
                "{} counts for {} bins",
                counts.len(),
                h.counts.len()
            )));
        }
        h.total = counts.iter().sum::<u64>() + overflow;
        h.counts = counts;
        h.overflow = overflow;
        Ok(h)
    }

    pub fn add(&mut self, value: f64) {
        self.total += 1;
        let last = self.edges[self.edges.len() - 1];
        if !(value >= self.edges[0] && value < last) {
            self.overflow += 1;
            return;
        }
        let bin = self.edges.partition_point(|&e| e <= value) - 1;
        self.counts[bin] += 1;
    }

    pub fn extend(&mut self, values: impl IntoIterator<Item = f64>) {
        for v in values {
            self.add(v);
        }
    }

    pub fn merge(&self, other: &Histogram) -> Result<Histogram> {
        let mut out = self.clone();
        out.merge_from(other)?;
        Ok(out)
    }

    pub fn merge_from(&mut self, other: &Histogram) -> Result<()> {
        if self.edges != other.edges {
            return Err(Error::EdgeMismatch);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.overflow += other.overflow;
        self.total += other.total;
        Ok(())
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn overflow(&self) -> u64 {
        self.overflow
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn bin(&self, i: usize) -> (f64, f64) {
        (self.edges[i], self.edges[i + 1])
    }

    pub fn midpoints(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn heights(&self, mode: Normalization) -> Vec<f64> {
        match mode {
            Normalization::Counts => self.counts.iter().map(|&c| c as f64).collect(),
            Normalization::Density => {
                let total = self.total.max(1) as f64;
                self.counts
                    .iter()
                    .zip(self.edges.windows(2))
                    .map(|(&c, w)| c as f64 / (total * (w[1] - w[0])))
                    .collect()
            }
        }
    }

    pub fn densities(&self) -> Vec<f64> {
        self.heights(Normalization::Density)
    }
}

pub fn build_histogram(values: &[f64], edges: &[f64]) -> Result<Histogram> {
    Histogram::from_values(values, edges.to_vec())
}

pub fn merge_histograms(a: &Histogram, b: &Histogram) -> Result<Histogram> {
    a.merge(b)
}
