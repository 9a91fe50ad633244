//! Walk the enumeration S_0, S_1, S_2, … of diametrisable sets and show
//! how the σ-length layers grow.
//!
//!     cargo run --example enumerate_family

use contrafix::setfamily::Family;

fn main() {
    let family = Family::new();

    println!("first sets of the family, with diameters λ^n:\n");
    println!("{:>4}  {:<12} {:<10} diam", "n", "descriptor", "σ");
    for n in 0..=22u64 {
        let set = family.nth_set(n).expect("desk-scale rank");
        println!(
            "{n:>4}  {:<12} {:<10} λ^{n}",
            set.to_string(),
            family.sigma(&set).to_string()
        );
    }

    println!("\nlayer sizes by σ-length:");
    let mut total = 0u64;
    for len in 0..=10 {
        let count = family.count_sigma_len(len).expect("desk scale");
        total += count;
        println!("  σ-length {len:>2}: {count:>5} sets (cumulative {total})");
    }
}
