//! Day-ahead Lyapunov exponents.
//!
//! The potential pair `(l_p1, l_p2)` comes from the load-forecast error
//! reduction and from the permanent of a 4×4 evolution matrix built from the
//! scaled synchronization times. The free Poisson pair `(l_y1, l_y2)` comes
//! from the expected price and droop.

use crate::error::{ErrorKind, StageError};
use crate::inputs::ScaledTimes;
use crate::quantity::Quantity;

/// The 4×4 evolution-time matrix whose permanent estimates the time density.
///
/// Rows are laid out exactly as published, including the repeated scaled
/// T6,2 in the last column of row 4 where the pattern of the other rows would
/// suggest the scaled T16. The entry is kept as published.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionMatrix {
    pub a: [[f64; 4]; 4],
}

impl EvolutionMatrix {
    pub fn new(a: [[f64; 4]; 4]) -> Self {
        Self { a }
    }

    pub fn transpose(&self) -> Self {
        let mut t = [[0.0; 4]; 4];
        for (i, row) in self.a.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t[j][i] = *v;
            }
        }
        Self { a: t }
    }
}

pub fn build_matrix(s: &ScaledTimes) -> EvolutionMatrix {
    let ScaledTimes {
        t6_1_s,
        t6_2_s,
        t16_s,
        t24_s,
    } = *s;
    EvolutionMatrix::new([
        [t6_1_s, t6_2_s, 1.0, 0.0],
        [t24_s, t16_s, t6_2_s, 1.0],
        [t16_s, t24_s, t16_s, t6_2_s],
        [t6_2_s, t16_s, t24_s, t6_2_s],
    ])
}

/// Permanent by Ryser's inclusion-exclusion over the 15 non-empty column subsets.
pub fn permanent(m: &EvolutionMatrix) -> f64 {
    const N: usize = 4;
    let mut total = 0.0;
    for subset in 1u32..(1 << N) {
        let mut product = 1.0;
        for row in &m.a {
            let row_sum: f64 = (0..N)
                .filter(|j| subset & (1 << j) != 0)
                .map(|j| row[j])
                .sum();
            product *= row_sum;
        }
        // sign (-1)^(n - |S|)
        if (N as u32 - subset.count_ones()) % 2 == 0 {
            total += product;
        } else {
            total -= product;
        }
    }
    total
}

/// Permanent as the plain sum over all 24 permutations. Slower, but a
/// direct transcription of the definition.
pub fn permanent_by_expansion(m: &EvolutionMatrix) -> f64 {
    let mut perm = [0usize, 1, 2, 3];
    let mut total = 0.0;
    loop {
        total += perm
            .iter()
            .enumerate()
            .map(|(i, &j)| m.a[i][j])
            .product::<f64>();
        if !next_permutation(&mut perm) {
            break;
        }
    }
    total
}

/// Advances to the next lexicographic permutation; false once the last is reached.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p
        .iter()
        .rposition(|&x| x > p[i])
        .expect("pivot has a successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovExponents {
    pub l_p1: f64,
    pub l_p2: f64,
    pub l_y1: f64,
    pub l_y2: f64,
    /// per(A), kept for diagnostics.
    pub perm_a: f64,
}

/// `l_p1 = δ + 1`.
pub fn exponent_lp1(delta: f64) -> f64 {
    delta + 1.0
}

/// `l_p2 = (ln per(A))² / 10 + 1`.
pub fn exponent_lp2(perm_a: f64) -> Result<f64, StageError> {
    if perm_a <= 0.0 || perm_a.is_nan() {
        return Err(StageError::new(
            Quantity::Lp2,
            ErrorKind::NonPositivePermanent { value: perm_a },
        ));
    }
    let ln = perm_a.ln();
    crate::error::finite(Quantity::Lp2, ln * ln / 10.0 + 1.0)
}

pub fn potential_exponents(delta: f64, perm_a: f64) -> Result<(f64, f64), StageError> {
    Ok((exponent_lp1(delta), exponent_lp2(perm_a)?))
}

fn checked_exp(quantity: Quantity, x: f64) -> Result<f64, StageError> {
    let v = x.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(StageError::new(quantity, ErrorKind::Overflow { quantity }))
    }
}

/// `l_y1 = exp(c₀/25)`.
pub fn exponent_ly1(c_0: f64) -> Result<f64, StageError> {
    checked_exp(Quantity::Ly1, c_0 / 25.0)
}

/// `l_y2 = exp(k_c/10) + 1`.
pub fn exponent_ly2(k_c: f64) -> Result<f64, StageError> {
    checked_exp(Quantity::Ly2, k_c / 10.0).map(|v| v + 1.0)
}

pub fn free_poisson_exponents(c_0: f64, k_c: f64) -> Result<(f64, f64), StageError> {
    Ok((exponent_ly1(c_0)?, exponent_ly2(k_c)?))
}

/// All four exponents from the scaled times and the three scalar inputs.
pub fn exponents(
    s: &ScaledTimes,
    delta: f64,
    c_0: f64,
    k_c: f64,
) -> Result<LyapunovExponents, StageError> {
    let perm_a = permanent(&build_matrix(s));
    let (l_p1, l_p2) = potential_exponents(delta, perm_a)?;
    let (l_y1, l_y2) = free_poisson_exponents(c_0, k_c)?;
    Ok(LyapunovExponents {
        l_p1,
        l_p2,
        l_y1,
        l_y2,
        perm_a,
    })
}
