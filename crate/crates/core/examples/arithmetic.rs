//! Prime valuations of factorials and the divisibility checks built on them.

use qlocal::arithmetic::{l1_check_a, l1_check_b, simple_power_degree, vp_factorial};

fn main() -> qlocal::Result<()> {
    println!("v2(8!) = {}, v3(100!) = {}", vp_factorial(8, 2)?, vp_factorial(100, 3)?);
    println!("x^k | k! for some 2 <= x <= 50, 2 <= k <= 200: {}", (2..=200).any(|k| (2..=50).any(|x| l1_check_a(x, k).unwrap())));
    println!("4^(k - k/l) | k! for l | k, k <= 200: {}", (2..=200u64).any(|k| (2..=k).filter(|l| k % l == 0).any(|l| l1_check_b(k, l).unwrap())));
    for n in [60u128, 3600, 216_000, 28_224, 129_600] {
        let hits: Vec<String> = simple_power_degree(n).iter().map(|(t, m)| format!("{t}^{m}")).collect();
        println!("{n} = |T|^m for {hits:?}");
    }
    Ok(())
}
