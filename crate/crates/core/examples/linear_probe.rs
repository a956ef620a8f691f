//! Order-p composition factors of irreducible subgroups of GL(d,p).

use qlocal::qp::compfactors_bound_probe;

fn main() -> qlocal::Result<()> {
    for (d, p) in [(2, 2), (2, 3), (3, 2), (2, 5)] {
        let r = compfactors_bound_probe(d, p, 100_000)?;
        println!(
            "GL({d},{p}): {} subgroups, {} irreducible, at most {} factors C{p} (bound {}), holds {}",
            r.subgroups, r.irreducible, r.max_count, r.bound, r.holds
        );
    }
    Ok(())
}
