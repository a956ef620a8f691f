//! Identifiers for finite simple groups and the bundled table of nonabelian
//! simple groups of order at most 10^8.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

static TABLE_JSON: &str = include_str!("../data/simple_groups.json");

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimpleKind {
    Cyclic { p: u64 },
    Alternating { n: u32 },
    /// Groups of Lie type; `tag` is `L`, `U`, `S` for the linear, unitary
    /// and symplectic families, or the twisted/exceptional label (`G2`, `2B2`, ...).
    Classical { tag: String, params: Vec<u64> },
    Sporadic { name: String },
}

/// A finite simple group, named up to isomorphism. Ordered by group order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleGroupId {
    pub order: u128,
    pub name: String,
    pub kind: SimpleKind,
}

impl SimpleGroupId {
    pub fn cyclic(p: u64) -> Self {
        debug_assert!(is_prime(p as u128));
        SimpleGroupId {
            order: p as u128,
            name: format!("C{p}"),
            kind: SimpleKind::Cyclic { p },
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.kind, SimpleKind::Cyclic { .. })
    }

    /// Looks a group up by name: `C7`, `A5`, `PSL(2,7)`, `M11`, ...
    /// A few common aliases (`PSL(3,2)`, `PSL(2,5)`, `GL(3,2)`) are accepted.
    pub fn by_name(name: &str) -> Result<Self> {
        let name = name.trim();
        if let Some(p) = name.strip_prefix('C').and_then(|s| s.parse::<u64>().ok()) {
            if is_prime(p as u128) {
                return Ok(SimpleGroupId::cyclic(p));
            }
            return Err(Error::NotInCatalog(format!("{name} is not simple")));
        }
        let canonical = match name {
            "PSL(2,4)" | "PSL(2,5)" | "Alt(5)" => "A5",
            "PSL(3,2)" | "GL(3,2)" | "SL(3,2)" => "PSL(2,7)",
            "PSL(2,9)" | "Alt(6)" => "A6",
            "PSL(4,2)" => "A8",
            "PSU(4,2)" => "PSp(4,3)",
            other => other,
        };
        table()
            .by_name
            .get(canonical)
            .map(|&i| table().entries[i].id())
            .ok_or_else(|| Error::NotInCatalog(name.to_string()))
    }

    pub fn catalog_entry(&self) -> Option<&'static SimpleEntry> {
        table().by_name.get(&self.name).map(|&i| &table().entries[i])
    }
}

impl fmt::Display for SimpleGroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// One row of the bundled table.
#[derive(Clone, Debug, Deserialize)]
pub struct SimpleEntry {
    pub name: String,
    pub kind: String,
    pub params: Vec<serde_json::Value>,
    pub order: u64,
    pub out_order: u64,
    pub oracle: String,
    #[serde(default)]
    pub sections: Option<Vec<String>>,
    #[serde(default)]
    pub sections_oracle: Option<String>,
    #[serde(default)]
    pub spectrum: Option<Vec<u64>>,
    #[serde(default)]
    pub spectrum_oracle: Option<String>,
}

impl SimpleEntry {
    fn int_param(&self, i: usize) -> u64 {
        self.params[i].as_u64().expect("numeric parameter")
    }

    fn str_param(&self, i: usize) -> String {
        self.params[i].as_str().expect("string parameter").to_string()
    }

    pub fn id(&self) -> SimpleGroupId {
        let kind = match self.kind.as_str() {
            "alternating" => SimpleKind::Alternating {
                n: self.int_param(0) as u32,
            },
            "sporadic" => SimpleKind::Sporadic {
                name: self.str_param(0),
            },
            _ => SimpleKind::Classical {
                tag: self.str_param(0),
                params: (1..self.params.len()).map(|i| self.int_param(i)).collect(),
            },
        };
        SimpleGroupId {
            order: self.order as u128,
            name: self.name.clone(),
            kind,
        }
    }

    /// Order recomputed from the family formula (sporadic orders are data).
    pub fn formula_order(&self) -> Option<u128> {
        match self.kind.as_str() {
            "alternating" => {
                let n = self.int_param(0) as u128;
                Some((1..=n).product::<u128>() / 2)
            }
            "classical" => {
                let tag = self.str_param(0);
                let n = self.int_param(1) as u32;
                let q = self.int_param(2) as u128;
                Some(match tag.as_str() {
                    "L" => linear_order(n, q),
                    "U" => unitary_order(n, q),
                    "S" => symplectic_order(n / 2, q),
                    _ => return None,
                })
            }
            "exceptional" => {
                let tag = self.str_param(0);
                if tag == "2F4" {
                    return Some(17_971_200);
                }
                let q = self.int_param(1) as u128;
                Some(match tag.as_str() {
                    "2B2" => q * q * (q * q + 1) * (q - 1),
                    "G2" => q.pow(6) * (q.pow(6) - 1) * (q * q - 1),
                    "2G2" => q.pow(3) * (q.pow(3) + 1) * (q - 1),
                    _ => return None,
                })
            }
            _ => None,
        }
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn linear_order(n: u32, q: u128) -> u128 {
    let mut o = q.pow(n * (n - 1) / 2);
    for i in 2..=n {
        o *= q.pow(i) - 1;
    }
    o / gcd(n as u128, q - 1)
}

fn unitary_order(n: u32, q: u128) -> u128 {
    let mut o = q.pow(n * (n - 1) / 2);
    for i in 2..=n {
        o *= if i % 2 == 0 { q.pow(i) - 1 } else { q.pow(i) + 1 };
    }
    o / gcd(n as u128, q + 1)
}

fn symplectic_order(m: u32, q: u128) -> u128 {
    let mut o = q.pow(m * m);
    for i in 1..=m {
        o *= q.pow(2 * i) - 1;
    }
    o / gcd(2, q - 1)
}

#[derive(Deserialize)]
struct TableFile {
    order_limit: u64,
    groups: Vec<SimpleEntry>,
}

pub struct SimpleTable {
    pub order_limit: u64,
    pub entries: Vec<SimpleEntry>,
    by_name: HashMap<String, usize>,
    by_order: HashMap<u128, Vec<usize>>,
}

impl SimpleTable {
    /// All nonabelian entries of the given order.
    pub fn with_order(&self, order: u128) -> Vec<&SimpleEntry> {
        self.by_order
            .get(&order)
            .map(|v| v.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default()
    }
}

/// The bundled table, parsed once.
pub fn table() -> &'static SimpleTable {
    static TABLE: OnceLock<SimpleTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let file: TableFile = serde_json::from_str(TABLE_JSON).expect("bundled table parses");
        let mut by_name = HashMap::new();
        let mut by_order: HashMap<u128, Vec<usize>> = HashMap::new();
        for (i, e) in file.groups.iter().enumerate() {
            by_name.insert(e.name.clone(), i);
            by_order.entry(e.order as u128).or_default().push(i);
        }
        SimpleTable {
            order_limit: file.order_limit,
            entries: file.groups,
            by_name,
            by_order,
        }
    })
}

pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, smallest prime first.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_orders_match_formulas() {
        let t = table();
        assert!(t.entries.len() > 100);
        for e in &t.entries {
            assert!(e.order <= t.order_limit);
            if let Some(o) = e.formula_order() {
                assert_eq!(o, e.order as u128, "{}", e.name);
            }
        }
    }

    #[test]
    fn only_collision_is_20160() {
        let mut seen: HashMap<u64, Vec<&str>> = HashMap::new();
        for e in &table().entries {
            seen.entry(e.order).or_default().push(&e.name);
        }
        let dups: Vec<_> = seen.iter().filter(|(_, v)| v.len() > 1).collect();
        assert_eq!(dups.len(), 1);
        assert_eq!(*dups[0].0, 20160);
        for e in table().with_order(20160) {
            assert!(e.spectrum.is_some());
        }
    }

    #[test]
    fn names_and_aliases() {
        assert_eq!(SimpleGroupId::by_name("A5").unwrap().order, 60);
        assert_eq!(SimpleGroupId::by_name("PSL(3,2)").unwrap().name, "PSL(2,7)");
        assert_eq!(SimpleGroupId::by_name("C7").unwrap().order, 7);
        assert!(SimpleGroupId::by_name("C6").is_err());
        assert_eq!(SimpleGroupId::by_name("A6").unwrap().catalog_entry().unwrap().out_order, 4);
        assert_eq!(SimpleGroupId::by_name("PSL(3,4)").unwrap().catalog_entry().unwrap().out_order, 12);
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }
}
