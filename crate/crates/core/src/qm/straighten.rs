//! Making a loxodromic direction normal under a finite quotient.
//!
//! Each row records how a generator `t` of the finite quotient acts:
//! `t g^{2N} t⁻¹ = g^{sign_g·2N} z^M` and `t z t⁻¹ = z^{sign_z}`, with `z`
//! central in the relevant subgroup. We look for `g' = g^p z^q` with
//! `p ∈ 2N·ℤ∖{0}` such that every `t` sends `g'` to `g'^{±1}`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StraighteningRow {
    pub sign_g: i64,
    pub sign_z: i64,
    pub twist: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StraighteningInput {
    pub n: i64,
    pub rows: Vec<StraighteningRow>,
}

impl StraighteningInput {
    fn validate(&self) -> Result<()> {
        if self.n <= 0 {
            return Err(Error::Precondition(format!("N must be positive, got {}", self.n)));
        }
        for row in &self.rows {
            if row.sign_g.abs() != 1 || row.sign_z.abs() != 1 {
                return Err(Error::Precondition(format!("signs must be ±1, got {row:?}")));
            }
        }
        Ok(())
    }
}

/// Image of `g^{a·2N} z^q` under the row's `t`, as the pair `(p, q)` of
/// exponents of `g` and `z`.
fn apply(row: &StraighteningRow, n: i64, a: i64, q: i64) -> (i64, i64) {
    (a * row.sign_g * 2 * n, a * row.twist + q * row.sign_z)
}

/// Checks that every row sends `g^p z^q` to itself or its inverse, with `p` a
/// nonzero multiple of `2N`.
pub fn verify_straightening(input: &StraighteningInput, p: i64, q: i64) -> bool {
    let n = input.n;
    if n <= 0 || p == 0 || p % (2 * n) != 0 {
        return false;
    }
    let a = p / (2 * n);
    input.rows.iter().all(|row| {
        let image = apply(row, n, a, q);
        image == (p, q) || image == (-p, -q)
    })
}

/// Finds `(p, q)` following the case analysis: trivial twists give
/// `g^{2N}`; a row inverting exactly one of `g`, `z` forces `g^{4N} z^{∓M}`.
pub fn straighten(input: &StraighteningInput) -> Result<(i64, i64)> {
    input.validate()?;
    let n = input.n;
    let mixed: Vec<&StraighteningRow> = input.rows.iter().filter(|r| r.sign_g != r.sign_z).collect();
    let (p, q) = match mixed.first() {
        None => (2 * n, 0),
        // sign_g = -1, sign_z = +1: 2·M + q = -q.
        Some(r) if r.sign_g < 0 => (4 * n, -r.twist),
        // sign_g = +1, sign_z = -1: 2·M - q = q.
        Some(r) => (4 * n, r.twist),
    };
    if verify_straightening(input, p, q) {
        return Ok((p, q));
    }
    let offender = input
        .rows
        .iter()
        .find(|row| {
            let image = apply(row, n, p / (2 * n), q);
            image != (p, q) && image != (-p, -q)
        })
        .copied();
    Err(Error::Infeasible(format!(
        "no g^p z^q with p = {p} is normalized by row {offender:?}"
    )))
}
