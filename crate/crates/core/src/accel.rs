//! Accurate accumulation and alternating-series acceleration.

/// Neumaier-compensated running sum.
///
/// Besides the compensated value it tracks `Σ|x|`, which the summation
/// engine uses to bound the rounding error of long partial sums.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
    abs: f64,
    count: u64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs += x.abs();
        self.count += 1;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn abs_sum(&self) -> f64 {
        self.abs
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        s.extend(iter);
        s
    }
}

/// Cohen–Villegas–Zagier acceleration of `Σ_{k≥0} (−1)^k a_k` using the
/// first `n` terms of `a`.
///
/// For moment sequences the error decays like `(3+√8)^{−n}`.
pub fn cvz_alternating<F: Fn(usize) -> f64>(a: F, n: usize) -> f64 {
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0;
    let mut c = -d;
    let mut s = CompensatedSum::new();
    let nf = n as f64;
    for k in 0..n {
        c = b - c;
        s.add(c * a(k));
        let kf = k as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s.value() / d
}
