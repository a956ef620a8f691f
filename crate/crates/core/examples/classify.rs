//! Quasiprimitive types of the labelled corpus.

use qlocal::catalog::ground_truth_corpus;
use qlocal::qp::{classify_qp, make_group_verified, ClassificationReport};
use qlocal::structure::SearchBudget;

fn main() -> qlocal::Result<()> {
    let budget = SearchBudget::default();
    for e in ground_truth_corpus() {
        let g = make_group_verified(&e.spec, &budget)?;
        if g.order() > 100_000 {
            println!("{:<34} skipped (order {})", e.label, g.order());
            continue;
        }
        let (ty, ev) = classify_qp(&g, &budget)?;
        let r = ClassificationReport::new(&g, ty, &ev);
        println!(
            "{:<34} {}  degree {:>4}  socle {}^{}  regular socle {}",
            e.label, ty, r.degree, r.t, r.k, r.regular_socle
        );
    }
    Ok(())
}
