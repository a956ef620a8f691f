//! A digraph with prescribed in- and out-local actions, from an
//! isomorphism between two subgroups.

use qlocal::action::DEFAULT_MAX_INDEX;
use qlocal::compat::{build_witness, witness_digraph, CompatProblemJson, SearchOptions};

fn main() -> qlocal::Result<()> {
    let text = include_str!("s3.json");
    let problem = CompatProblemJson::parse(text)?.to_problem()?;
    let w = build_witness(&problem, &SearchOptions::default())?;
    println!("g = {}", w.g);
    println!("A^g = B: {}, H ∩ H^g = B: {}", w.checks.a_conjugates_to_b, w.checks.intersection_is_b);
    println!(
        "L- of degree {} and order {}, L+ of degree {} and order {}",
        w.checks.l_minus_degree, w.checks.l_minus_order, w.checks.l_plus_degree, w.checks.l_plus_order
    );
    let d = witness_digraph(&w, DEFAULT_MAX_INDEX)?;
    println!("{} vertices, {} arcs", d.digraph.vertex_count, d.digraph.arcs.len());
    println!(
        "out-local action ~ L+: {:?}, in-local action ~ L-: {:?}",
        d.out_certificate.verdict, d.in_certificate.verdict
    );
    println!("{}", d.digraph.to_dot().lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("...");
    Ok(())
}
