//! Permutations of `{0, .., n-1}` stored as full image arrays.
//!
//! Permutations act on the right: `p.image(x)` is `x^p`, and `a.compose(&b)`
//! is the product `a·b`, i.e. first `a` then `b`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} out of range for degree {n}"
                )));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Unchecked constructor for images known to form a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let x = x as usize;
                if x >= degree {
                    return Err(Error::InvalidPoint { point: x, degree });
                }
                if touched[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} appears in more than one cycle position"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle notation such as `(0 1 2)(3 4)` or `()`.
    ///
    /// Points inside a cycle may be separated by spaces or commas. When
    /// `degree` is `None` the degree is one more than the largest point.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        let mut current: Option<Vec<u32>> = None;
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b'(' => {
                    if current.is_some() {
                        return Err(Error::Parse {
                            position: i,
                            message: "nested '('".into(),
                        });
                    }
                    current = Some(Vec::new());
                    i += 1;
                }
                b')' => match current.take() {
                    Some(cycle) => {
                        if cycle.len() > 1 {
                            cycles.push(cycle);
                        }
                        i += 1;
                    }
                    None => {
                        return Err(Error::Parse {
                            position: i,
                            message: "unmatched ')'".into(),
                        })
                    }
                },
                b' ' | b',' | b'\t' | b'\n' | b'\r' => i += 1,
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let value: u32 = text[start..i].parse().map_err(|_| Error::Parse {
                        position: start,
                        message: "point out of range".into(),
                    })?;
                    match current.as_mut() {
                        Some(cycle) => cycle.push(value),
                        None => {
                            return Err(Error::Parse {
                                position: start,
                                message: "point outside of a cycle".into(),
                            })
                        }
                    }
                }
                _ => {
                    return Err(Error::Parse {
                        position: i,
                        message: format!("unexpected character '{}'", c as char),
                    })
                }
            }
        }
        if current.is_some() {
            return Err(Error::Parse {
                position: bytes.len(),
                message: "unterminated cycle".into(),
            });
        }
        let max_point = cycles.iter().flatten().copied().max();
        let degree = match degree {
            Some(d) => d,
            None => max_point.map_or(1, |m| m as usize + 1),
        };
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u32> {
        self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// The product `self·other` (apply `self` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// In-place right multiplication: `self <- self·other`.
    pub fn mul_assign(&mut self, other: &Permutation) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `x⁻¹·self·x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        // (p^x)^(x^-1 self x) = (p^self)^x
        let mut images = vec![0u32; self.images.len()];
        for (p, &q) in self.images.iter().enumerate() {
            images[x.images[p] as usize] = x.images[q as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, exponent: i64) -> Permutation {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut result = Permutation::identity(self.degree());
        let mut square = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&square);
            }
            square = square.compose(&square);
            e >>= 1;
        }
        result
    }

    /// Non-trivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u128 {
        self.cycles()
            .iter()
            .fold(1u128, |acc, c| lcm(acc, c.len() as u128))
    }

    pub fn moved_points(&self) -> impl Iterator<Item = u32> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn first_moved_point(&self) -> Option<u32> {
        self.moved_points().next()
    }

    /// Extends to a permutation of a larger degree fixing the new points.
    pub fn extend(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Shifts the support by `offset` inside a permutation of `degree` points.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation { images }
    }
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<u32>::deserialize(deserializer)?;
        Permutation::from_images(images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        let p = Permutation::parse("(0 1 2)(3 4)", None).unwrap();
        assert_eq!(p.degree(), 5);
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert_eq!(Permutation::parse("()", Some(4)).unwrap().to_string(), "()");
        assert_eq!(Permutation::parse("(2,0)", Some(3)).unwrap().to_string(), "(0 2)");
    }

    #[test]
    fn parse_errors_carry_position() {
        match Permutation::parse("(0 1 x)", None) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Permutation::parse("(0 1", None).is_err());
        assert!(Permutation::parse("(0 1 0)", None).is_err());
        assert!(Permutation::parse("(0 5)", Some(3)).is_err());
    }

    #[test]
    fn right_action_composition() {
        let a = Permutation::parse("(0 1)", Some(3)).unwrap();
        let b = Permutation::parse("(1 2)", Some(3)).unwrap();
        // 0 -> 1 -> 2, so a·b = (0 2 1)
        assert_eq!(a.compose(&b).to_string(), "(0 2 1)");
        assert_eq!(a.conjugate_by(&b).to_string(), "(0 2)");
    }

    #[test]
    fn json_roundtrip_rejects_non_bijections() {
        let p: Permutation = serde_json::from_str("[1,2,0]").unwrap();
        assert_eq!(p.to_string(), "(0 1 2)");
        assert!(serde_json::from_str::<Permutation>("[0,0,1]").is_err());
    }

    fn arb_perm() -> impl Strategy<Value = Permutation> {
        (1usize..12)
            .prop_flat_map(|n| Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_and_text_roundtrip(p in arb_perm()) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
            let q = Permutation::parse(&p.to_string(), Some(p.degree())).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert!(p.pow(p.order() as i64).is_identity());
        }
    }
}
