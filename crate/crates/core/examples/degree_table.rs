//! Which degrees each quasiprimitive type can have.

use qlocal::qp::{degree_feasible, degree_rule, QPType};

fn main() {
    for ty in QPType::ALL {
        let r = degree_rule(ty);
        println!("{ty}: n = {}  ({})", r.formula, r.constraints);
    }
    for n in [8u128, 12, 60, 64, 3600, 7200, 216_000] {
        let row: Vec<String> = QPType::ALL
            .iter()
            .map(|&ty| {
                let f = degree_feasible(ty, n);
                format!("{ty}:{}", if f.unconstrained { "any" } else if f.feasible { "yes" } else { "no" })
            })
            .collect();
        println!("n = {n:>6}  {}", row.join(" "));
    }
}
