//! Closed-form counts in exact 128-bit arithmetic.
//!
//! Every operation is checked: an intermediate that does not fit in `u128`
//! yields [`FormulaError::Overflow`] instead of wrapping.

use thiserror::Error;

pub type Count = u128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("{op}: exact value exceeds 128 bits")]
    Overflow { op: &'static str },
    #[error("{op}: argument out of domain ({reason})")]
    OutOfDomain { op: &'static str, reason: String },
    /// The closed form does not cover this `n`; the exact count is known from
    /// the explicit classification instead.
    #[error("{op}: closed form undefined at n = {n}; known value {known} (from {provenance})")]
    KnownValueOnly {
        op: &'static str,
        n: u32,
        known: Count,
        provenance: &'static str,
    },
}

fn overflow(op: &'static str) -> FormulaError {
    FormulaError::Overflow { op }
}

fn domain(op: &'static str, reason: impl Into<String>) -> FormulaError {
    FormulaError::OutOfDomain {
        op,
        reason: reason.into(),
    }
}

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Result<Count, FormulaError> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: Count = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1); divide through the gcd first
        // so the product stays small.
        let num = Count::from(n - i);
        let den = Count::from(i + 1);
        let g = gcd(acc, den);
        let (a, d) = (acc / g, den / g);
        acc = a.checked_mul(num / d).ok_or_else(|| overflow("binomial"))?;
    }
    Ok(acc)
}

fn gcd(mut a: Count, mut b: Count) -> Count {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `C(n) = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u32) -> Result<Count, FormulaError> {
    if n == 0 {
        return Err(domain("catalan", "n must be at least 1"));
    }
    let two_n = n.checked_mul(2).ok_or_else(|| overflow("catalan"))?;
    let central = binomial(two_n, n).map_err(|_| overflow("catalan"))?;
    Ok(central / Count::from(n + 1))
}

fn add(op: &'static str, a: Count, b: Count) -> Result<Count, FormulaError> {
    a.checked_add(b).ok_or_else(|| overflow(op))
}

fn mul(op: &'static str, a: Count, b: Count) -> Result<Count, FormulaError> {
    a.checked_mul(b).ok_or_else(|| overflow(op))
}

/// Number of difference operators on the `n`-chain sending the top to `a_j`.
///
/// `C(n)` for `j ∈ {n-1, n-2}`; for `j <= n-3`,
/// `C(n) + Σ_{k=1}^{n-2-j} binom(n-2-j, k) C(n-k)`.
pub fn omega_top_formula(n: u32, j: u32) -> Result<Count, FormulaError> {
    const OP: &str = "omega_top_formula";
    if n == 0 {
        return Err(domain(OP, "n must be at least 1"));
    }
    if j >= n {
        return Err(domain(OP, format!("j = {j} must be below n = {n}")));
    }
    let cn = catalan(n)?;
    if j + 2 >= n {
        return Ok(cn);
    }
    let t = n - 2 - j;
    let mut total = cn;
    for k in 1..=t {
        let term = mul(OP, binomial(t, k)?, catalan(n - k)?)?;
        total = add(OP, total, term)?;
    }
    Ok(total)
}

/// The same count via the recurrence
/// `ω_j(L_n) = C(n) + Σ_{k=j}^{n-3} ω_k(L_{n-1})`, with `C(n)` at `j ∈ {n-1, n-2}`.
///
/// Defined for `n >= 3`, `0 <= j <= n-3`. Evaluated bottom-up over `n`.
pub fn omega_recurrence(n: u32, j: u32) -> Result<Count, FormulaError> {
    const OP: &str = "omega_recurrence";
    if n < 3 {
        return Err(domain(OP, "n must be at least 3"));
    }
    if j + 3 > n {
        return Err(domain(
            OP,
            format!("j = {j} must be at most n - 3 = {}", n - 3),
        ));
    }
    // row[m][j] = ω_j(L_m) for all 0 <= j < m.
    let mut prev: Vec<Count> = Vec::new();
    for m in 1..=n {
        let cm = catalan(m)?;
        let mut row = vec![0; m as usize];
        for jj in 0..m {
            row[jj as usize] = if jj + 2 >= m {
                cm
            } else {
                let mut s = cm;
                for k in jj..=(m - 3) {
                    s = add(OP, s, prev[k as usize])?;
                }
                s
            };
        }
        prev = row;
    }
    Ok(prev[j as usize])
}

/// Total number of difference operators on the `n`-chain.
pub fn chain_total(n: u32) -> Result<Count, FormulaError> {
    const OP: &str = "chain_total";
    if n == 0 {
        return Err(domain(OP, "n must be at least 1"));
    }
    let base = mul(OP, Count::from(n), catalan(n)?)?;
    if n <= 2 {
        return Ok(base);
    }
    let mut total = base;
    for k in 1..=(n - 2) {
        let ck = catalan(n - k)?;
        for p in k..=(n - 2) {
            total = add(OP, total, mul(OP, binomial(p, k)?, ck)?)?;
        }
    }
    Ok(total)
}

/// `Σ_{k=1}^{n-2} (k+1) binom(n-2, k)`.
pub fn quasi_binomial_sum(n: u32) -> Result<Count, FormulaError> {
    const OP: &str = "quasi_binomial_sum";
    if n < 2 {
        return Err(domain(OP, "n must be at least 2"));
    }
    let m = n - 2;
    let mut s: Count = 0;
    for k in 1..=m {
        s = add(OP, s, mul(OP, Count::from(k + 1), binomial(m, k)?)?)?;
    }
    Ok(s)
}

/// `(3n³ - 22n² + 61n - 50) / 2`, the non-derivation part of the quasi-antichain count.
pub fn quasi_cubic_term(n: u32) -> Result<Count, FormulaError> {
    const OP: &str = "quasi_cubic_term";
    let x = i128::from(n);
    let num = x
        .checked_pow(3)
        .and_then(|c| c.checked_mul(3))
        .and_then(|c| c.checked_sub(22 * x * x))
        .and_then(|c| c.checked_add(61 * x))
        .and_then(|c| c.checked_sub(50))
        .ok_or_else(|| overflow(OP))?;
    if num < 0 || num % 2 != 0 {
        return Err(domain(
            OP,
            format!("numerator {num} is not a nonnegative even integer"),
        ));
    }
    Ok((num / 2) as Count)
}

/// Number of derivations on the `n`-element quasi-antichain, `n >= 4`.
pub fn quasi_derivation_total(n: u32) -> Result<Count, FormulaError> {
    const OP: &str = "quasi_derivation_total";
    if n < 4 {
        return Err(domain(OP, "n must be at least 4"));
    }
    add(OP, 2, quasi_binomial_sum(n)?)
}

/// Exact count of difference operators on `M_2`, from its explicit classification.
pub const QUASI_TOTAL_M2: Count = 36;

/// Number of difference operators on the `n`-element quasi-antichain, `n >= 5`.
pub fn quasi_total(n: u32) -> Result<Count, FormulaError> {
    const OP: &str = "quasi_total";
    match n {
        4 => Err(FormulaError::KnownValueOnly {
            op: OP,
            n,
            known: QUASI_TOTAL_M2,
            provenance: "explicit classification of M_2",
        }),
        0..=3 => Err(domain(OP, "n must be at least 5")),
        _ => add(OP, quasi_cubic_term(n)?, quasi_binomial_sum(n)?),
    }
}

/// Sizes of the slices of difference operators on `M_{n-2}` split by the
/// images of the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasiSlices {
    /// `d(0) = 0`: the derivations.
    pub bottom_fixed: Count,
    /// `d(0) = d(1) = 1`.
    pub both_to_top: Count,
    /// `d(0) = 1`, `d(1)` an atom.
    pub top_to_atom: Count,
    /// `d(0) = 1`, `d(1) = 0`.
    pub top_to_bottom: Count,
    /// `d(0)` an atom.
    pub bottom_to_atom: Count,
}

impl QuasiSlices {
    pub fn total(&self) -> Count {
        self.bottom_fixed
            + self.both_to_top
            + self.top_to_atom
            + self.top_to_bottom
            + self.bottom_to_atom
    }

    pub fn as_array(&self) -> [Count; 5] {
        [
            self.bottom_fixed,
            self.both_to_top,
            self.top_to_atom,
            self.top_to_bottom,
            self.bottom_to_atom,
        ]
    }
}

/// Slice sizes predicted by the case counts, `n >= 5`.
pub fn quasi_slice_formulas(n: u32) -> Result<QuasiSlices, FormulaError> {
    const OP: &str = "quasi_slice_formulas";
    if n < 5 {
        return Err(domain(OP, "n must be at least 5"));
    }
    let atoms = Count::from(n - 2);
    let rest = Count::from(n - 3);
    Ok(QuasiSlices {
        bottom_fixed: quasi_derivation_total(n)?,
        both_to_top: 1,
        top_to_atom: atoms * (1 + rest * rest + binomial(n - 3, 2)?),
        top_to_bottom: 1 + atoms * rest + binomial(n - 2, 2)?,
        bottom_to_atom: 3 * atoms,
    })
}
