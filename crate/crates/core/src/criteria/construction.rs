//! Types of the ∨-product construction.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::vee;
use crate::error::{Error, Result};
use crate::folding::CodeParams;
use crate::gf2poly::{classify, BinaryPolynomial, PolynomialKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionType {
    Primitive,
    /// Irreducible non-primitive.
    Inp,
    Reducible,
}

impl ConstructionType {
    fn from_kind(kind: PolynomialKind) -> Result<Self> {
        match kind {
            PolynomialKind::Primitive => Ok(Self::Primitive),
            PolynomialKind::Inp => Ok(Self::Inp),
            PolynomialKind::ReducibleUniform => Ok(Self::Reducible),
            other => Err(Error::Precondition(format!("{other} polynomials have no uniform exponent"))),
        }
    }
}

impl fmt::Display for ConstructionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Primitive => "primitive",
            Self::Inp => "INP",
            Self::Reducible => "reducible",
        })
    }
}

use ConstructionType::{Inp, Primitive, Reducible};

/// The admissible `(f1, f2, f1 ∨ f2)` type triples.
pub const TABLE_ROWS: [[ConstructionType; 3]; 8] = [
    [Reducible, Reducible, Reducible],
    [Reducible, Inp, Reducible],
    [Reducible, Primitive, Reducible],
    [Inp, Inp, Reducible],
    [Inp, Inp, Inp],
    [Inp, Primitive, Reducible],
    [Inp, Primitive, Inp],
    [Primitive, Primitive, Inp],
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionRecord {
    pub f1: BinaryPolynomial,
    pub f2: BinaryPolynomial,
    pub g: BinaryPolynomial,
    pub types: [ConstructionType; 3],
    /// `(exp f1, exp f2; deg f1, deg f2)`.
    pub params: CodeParams,
    /// One-based row of the type table.
    pub row: usize,
    /// True when the row matches with `f1` and `f2` exchanged.
    pub swapped: bool,
}

fn consistency(f1: &BinaryPolynomial, f2: &BinaryPolynomial, what: &str) -> Error {
    Error::Consistency(format!("vee({f1}, {f2}): {what}"))
}

/// Classifies `f1`, `f2` and `g = f1 ∨ f2`, and checks the result against
/// the type table and the structural facts behind it: `g` is never
/// primitive, a reducible input forces a reducible `g`, and irreducible
/// inputs give an irreducible `g` exactly when their degrees are coprime.
pub fn classify_construction(f1: &BinaryPolynomial, f2: &BinaryPolynomial) -> Result<ConstructionRecord> {
    for f in [f1, f2] {
        if f.degree().unwrap_or(0) < 2 {
            return Err(Error::Precondition(format!("{f} must have degree at least 2")));
        }
    }
    let g = vee(f1, f2)?;
    let (c1, c2, cg) = (classify(f1)?, classify(f2)?, classify(&g)?);
    let types = [
        ConstructionType::from_kind(c1.kind)?,
        ConstructionType::from_kind(c2.kind)?,
        ConstructionType::from_kind(cg.kind).map_err(|_| consistency(f1, f2, "g has no uniform exponent"))?,
    ];
    let (r1, r2) = (c1.exponent.unwrap_or(1), c2.exponent.unwrap_or(1));
    if cg.exponent != Some(r1 * r2) {
        return Err(consistency(f1, f2, &format!("exponent {:?} differs from {}", cg.exponent, r1 * r2)));
    }
    if types[2] == Primitive {
        return Err(consistency(f1, f2, "g is primitive"));
    }
    let irreducible_inputs = types[0] != Reducible && types[1] != Reducible;
    let coprime_degrees = f1.deg().gcd(&f2.deg()) == 1;
    let expect_irreducible = irreducible_inputs && coprime_degrees;
    if (types[2] != Reducible) != expect_irreducible {
        return Err(consistency(f1, f2, &format!("g is {} but inputs are {} and {}", types[2], types[0], types[1])));
    }
    let direct = TABLE_ROWS.iter().position(|r| *r == types);
    let swapped_types = [types[1], types[0], types[2]];
    let (row, swapped) = match direct {
        Some(i) => (i + 1, false),
        None => match TABLE_ROWS.iter().position(|r| *r == swapped_types) {
            Some(i) => (i + 1, true),
            None => return Err(consistency(f1, f2, &format!("types {types:?} are not in the table"))),
        },
    };
    Ok(ConstructionRecord {
        f1: f1.clone(),
        f2: f2.clone(),
        g,
        types,
        params: CodeParams::new(r1 as usize, r2 as usize, f1.deg(), f2.deg()),
        row,
        swapped,
    })
}
