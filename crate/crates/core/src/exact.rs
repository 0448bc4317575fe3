//! Exact polynomial evaluation with floating-point expansions.
//!
//! An expansion is a sequence of binary64 values, non-overlapping and sorted by
//! increasing magnitude, whose exact sum is the represented number. Sums and
//! products with a single double are computed without rounding error using
//! the classic two-sum / two-product transformations, so the only rounding
//! happens once, when the final expansion is compressed to a single double.
//!
//! Both reliability polynomials have a high-order root at 1, which makes any
//! single-precision evaluation lose all relative accuracy close to it.
//! [`horner`] therefore only trusts plain binary64 when a running error bound
//! proves it accurate, while [`power_sum`] always works exactly.

/// `a + b = s + err` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Requires `|a| >= |b|` or `a == 0`.
#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// `a * b = p + err` exactly, barring overflow and underflow.
#[inline]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct Expansion(Vec<f64>);

impl Expansion {
    pub(crate) fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self(Vec::new())
        } else {
            Self(vec![v])
        }
    }

    /// Adds a double, dropping zero components.
    pub(crate) fn add(&self, b: f64) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut q = b;
        for &e in &self.0 {
            let (s, h) = two_sum(q, e);
            if h != 0.0 {
                out.push(h);
            }
            q = s;
        }
        if q != 0.0 || out.is_empty() {
            out.push(q);
        }
        Self(out).compress()
    }

    pub(crate) fn add_expansion(&self, other: &Expansion) -> Self {
        other.0.iter().fold(self.clone(), |acc, &c| acc.add(c))
    }

    pub(crate) fn mul(&self, b: f64) -> Self {
        let mut acc = Expansion::default();
        for &e in &self.0 {
            let (p, err) = two_product(e, b);
            acc = acc.add(err).add(p);
        }
        acc
    }

    /// Renormalizes so the largest component is within an ulp of the exact sum.
    fn compress(self) -> Self {
        let e = self.0;
        if e.len() < 2 {
            return Self(e.into_iter().filter(|v| *v != 0.0).collect());
        }
        let m = e.len();
        let mut g = vec![0.0; m];
        let mut bottom = m - 1;
        let mut q = e[m - 1];
        for i in (0..m - 1).rev() {
            let (s, small) = fast_two_sum(q, e[i]);
            if small != 0.0 {
                g[bottom] = s;
                bottom -= 1;
                q = small;
            } else {
                q = s;
            }
        }
        g[bottom] = q;
        let mut h = Vec::with_capacity(m - bottom);
        for &gi in &g[bottom + 1..] {
            let (s, small) = fast_two_sum(gi, q);
            if small != 0.0 {
                h.push(small);
            }
            q = s;
        }
        h.push(q);
        h.retain(|v| *v != 0.0);
        Self(h)
    }

    pub(crate) fn to_f64(&self) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc + c)
    }
}

/// Relative error accepted from the plain binary64 Horner pass.
const FAST_PATH_TOLERANCE: f64 = 1e-15;

/// Plain Horner with a running error bound: `|p(x) − y| <= bound`.
fn horner_with_bound(coeffs: &[f64], x: f64) -> (f64, f64) {
    let Some((&lead, rest)) = coeffs.split_last() else {
        return (0.0, 0.0);
    };
    let ax = x.abs();
    let mut y = lead;
    let mut mu = y.abs() / 2.0;
    for &c in rest.iter().rev() {
        y = x * y + c;
        mu = ax * mu + y.abs();
    }
    (y, f64::EPSILON / 2.0 * (2.0 * mu - y.abs()))
}

/// Horner's scheme, coefficients in ascending degree. Falls back to exact
/// expansion arithmetic whenever the binary64 error bound is not small
/// against the result, as happens next to a multiple root.
pub(crate) fn horner(coeffs: &[f64], x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let (y, bound) = horner_with_bound(coeffs, x);
    if bound.is_finite() && bound <= FAST_PATH_TOLERANCE * y.abs() {
        return y;
    }
    coeffs
        .iter()
        .rev()
        .fold(Expansion::default(), |acc, &c| acc.mul(x).add(c))
        .to_f64()
}

/// Independent term-by-term route: each `c_k x^k` is formed exactly and the
/// terms are accumulated exactly.
pub(crate) fn power_sum(coeffs: &[f64], x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let mut power = Expansion::from_f64(1.0);
    let mut total = Expansion::default();
    for &c in coeffs {
        if c != 0.0 {
            total = total.add_expansion(&power.mul(c));
        }
        power = power.mul(x);
    }
    total.to_f64()
}
