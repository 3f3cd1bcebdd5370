//! Self-maps on a lattice and the weight-0/1/-1 Leibniz-type identities.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lattice::{Element, Lattice, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("operator has {operator} entries but the lattice has {lattice} elements")]
    SizeMismatch { operator: usize, lattice: usize },
    #[error("image {image} of element {element} is out of range for a lattice of size {size}")]
    ImageOutOfRange {
        element: usize,
        image: usize,
        size: usize,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("unsupported lattice shape: {0}")]
    UnsupportedShape(&'static str),
    #[error("invalid weight {0}; expected 0, 1 or -1")]
    InvalidWeight(String),
}

/// A total map `d: L -> L` stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Operator {
    image: Vec<Element>,
}

impl Operator {
    /// Wraps an image array, checking that every entry is a valid index.
    pub fn new(image: Vec<Element>) -> Result<Self, OperatorError> {
        let n = image.len();
        if let Some((element, &image)) = image.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(OperatorError::ImageOutOfRange {
                element,
                image,
                size: n,
            });
        }
        Ok(Self { image })
    }

    pub(crate) fn from_image_unchecked(image: Vec<Element>) -> Self {
        debug_assert!(image.iter().all(|&v| v < image.len()));
        Self { image }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: Element) -> Result<Self, OperatorError> {
        Self::new(vec![value; n])
    }

    pub fn lattice_size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[Element] {
        &self.image
    }

    pub fn into_image(self) -> Vec<Element> {
        self.image
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.image[x]
    }

    pub fn ensure_bound_to(&self, l: &Lattice) -> Result<(), OperatorError> {
        if self.image.len() == l.size() {
            Ok(())
        } else {
            Err(OperatorError::SizeMismatch {
                operator: self.image.len(),
                lattice: l.size(),
            })
        }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Operator) -> Operator {
        Operator {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.image.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Which defining identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    /// `d(x∧y) = (d(x)∧y) ∨ (x∧d(y))`
    Zero,
    /// `d(x∧y) = (d(x)∧y) ∨ (x∧d(y)) ∨ (d(x)∧d(y))`
    One,
    /// `d(x∧y) ∨ (d(x)∧d(y)) = (d(x)∧y) ∨ (x∧d(y))`
    MinusOne,
}

impl Weight {
    pub const ALL: [Weight; 3] = [Weight::Zero, Weight::One, Weight::MinusOne];

    pub fn value(self) -> i8 {
        match self {
            Weight::Zero => 0,
            Weight::One => 1,
            Weight::MinusOne => -1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self, OperatorError> {
        match v {
            0 => Ok(Weight::Zero),
            1 => Ok(Weight::One),
            -1 => Ok(Weight::MinusOne),
            other => Err(OperatorError::InvalidWeight(other.to_string())),
        }
    }

    /// Whether the identity can fail on a diagonal pair `(x, x)`.
    ///
    /// For weight 1 both sides collapse to `d(x)`. For weights 0 and -1 the
    /// diagonal reduces to `d(x) = d(x)∧x`, which is exactly decreasingness.
    #[inline]
    pub fn checks_diagonal(self) -> bool {
        !matches!(self, Weight::One)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl FromStr for Weight {
    type Err = OperatorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: i64 = s
            .trim()
            .trim_start_matches('+')
            .parse()
            .map_err(|_| OperatorError::InvalidWeight(s.to_string()))?;
        Weight::from_value(v)
    }
}

/// Evaluates the weight identity at one pair, given the images `dx = d(x)`,
/// `dy = d(y)` and `dm = d(x∧y)`. Table lookups only.
#[inline(always)]
pub fn identity_at(
    l: &Lattice,
    w: Weight,
    x: Element,
    y: Element,
    dx: Element,
    dy: Element,
    dm: Element,
) -> bool {
    let left = l.meet(dx, y);
    let right = l.meet(x, dy);
    match w {
        Weight::Zero => dm == l.join(left, right),
        Weight::One => dm == l.join(l.join(left, right), l.meet(dx, dy)),
        Weight::MinusOne => l.join(dm, l.meet(dx, dy)) == l.join(left, right),
    }
}

/// Membership of `d` in the set of weight-`w` operators on `l`.
pub fn check_weight(l: &Lattice, d: &Operator, w: Weight) -> Result<bool, OperatorError> {
    d.ensure_bound_to(l)?;
    Ok(weight_violation(l, d, w).is_none())
}

/// First pair `(x, y)`, `x <= y` in index order, at which the identity fails.
pub fn weight_violation(l: &Lattice, d: &Operator, w: Weight) -> Option<(Element, Element)> {
    let img = d.image();
    let n = l.size();
    for x in 0..n {
        let start = if w.checks_diagonal() { x } else { x + 1 };
        for y in start..n {
            let m = l.meet(x, y);
            if !identity_at(l, w, x, y, img[x], img[y], img[m]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Structural predicates on operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Decreasing,
    Increasing,
    Isotone,
    MeetHomomorphism,
    JoinHomomorphism,
    Idempotent,
    LatticeHomomorphism,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Decreasing,
        Property::Increasing,
        Property::Isotone,
        Property::MeetHomomorphism,
        Property::JoinHomomorphism,
        Property::Idempotent,
        Property::LatticeHomomorphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Decreasing => "decreasing",
            Property::Increasing => "increasing",
            Property::Isotone => "isotone",
            Property::MeetHomomorphism => "meet-hom",
            Property::JoinHomomorphism => "join-hom",
            Property::Idempotent => "idempotent",
            Property::LatticeHomomorphism => "lattice-hom",
        }
    }
}

pub fn check_property(l: &Lattice, d: &Operator, p: Property) -> Result<bool, OperatorError> {
    d.ensure_bound_to(l)?;
    Ok(has_property(l, d, p))
}

pub(crate) fn has_property(l: &Lattice, d: &Operator, p: Property) -> bool {
    let img = d.image();
    let els = || l.elements();
    match p {
        Property::Decreasing => els().all(|x| l.le(img[x], x)),
        Property::Increasing => els().all(|x| l.le(x, img[x])),
        Property::Isotone => els().all(|x| els().all(|y| !l.le(x, y) || l.le(img[x], img[y]))),
        Property::MeetHomomorphism => {
            els().all(|x| els().all(|y| img[l.meet(x, y)] == l.meet(img[x], img[y])))
        }
        Property::JoinHomomorphism => {
            els().all(|x| els().all(|y| img[l.join(x, y)] == l.join(img[x], img[y])))
        }
        Property::Idempotent => els().all(|x| img[img[x]] == img[x]),
        Property::LatticeHomomorphism => {
            has_property(l, d, Property::MeetHomomorphism)
                && has_property(l, d, Property::JoinHomomorphism)
        }
    }
}

/// `d^u`: agrees with `d` except that the top is sent to `u`.
pub fn modify_at_top(l: &Lattice, d: &Operator, u: Element) -> Result<Operator, OperatorError> {
    d.ensure_bound_to(l)?;
    l.check_element(u)?;
    let mut image = d.image().to_vec();
    image[l.top()] = u;
    Ok(Operator { image })
}

/// `D(x) = d(x)` when `x <= d(1)`, otherwise `1`. Chains only.
pub fn chain_saturate(l: &Lattice, d: &Operator) -> Result<Operator, OperatorError> {
    require_chain(l, d)?;
    Ok(saturate_below_top_image(l, d))
}

/// `𝔇(x) = d(1)` when `x <= d(1)`, otherwise `d(x)`. Chains only.
pub fn chain_floor(l: &Lattice, d: &Operator) -> Result<Operator, OperatorError> {
    require_chain(l, d)?;
    Ok(floor_below_top_image(l, d))
}

fn require_chain(l: &Lattice, d: &Operator) -> Result<(), OperatorError> {
    d.ensure_bound_to(l)?;
    if l.is_chain() {
        Ok(())
    } else {
        Err(OperatorError::UnsupportedShape(
            "the construction is only guaranteed on chains",
        ))
    }
}

// Raw case definitions; used directly to build the off-chain counterexamples.
pub(crate) fn saturate_below_top_image(l: &Lattice, d: &Operator) -> Operator {
    let cut = d.apply(l.top());
    let image = l
        .elements()
        .map(|x| if l.le(x, cut) { d.apply(x) } else { l.top() })
        .collect();
    Operator { image }
}

pub(crate) fn floor_below_top_image(l: &Lattice, d: &Operator) -> Operator {
    let cut = d.apply(l.top());
    let image = l
        .elements()
        .map(|x| if l.le(x, cut) { cut } else { d.apply(x) })
        .collect();
    Operator { image }
}
