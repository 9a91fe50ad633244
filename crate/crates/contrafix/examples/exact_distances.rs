//! Exact ultrametric distances: every value is λ^k for an integer k, and
//! the strong triangle inequality holds with exponents alone.
//!
//!     cargo run --example exact_distances

use contrafix::metric::Lambda;
use contrafix::setfamily::Family;
use contrafix::words::Word;

fn main() {
    let family = Family::new();
    let words: Vec<Word> = ["_", "a", "b", "aa", "ab", "ba", "aab", "abab"]
        .iter()
        .map(|s| s.parse().expect("literal"))
        .collect();

    println!("pairwise distance exponents (entry k means d = λ^k):\n");
    print!("{:>6}", "");
    for y in &words {
        print!("{:>6}", y.to_string());
    }
    println!();
    for x in &words {
        print!("{:>6}", x.to_string());
        for y in &words {
            let d = family.distance(x, y).expect("desk scale");
            match d.exponent() {
                None => print!("{:>6}", "·"),
                Some(k) => print!("{k:>6}"),
            }
        }
        println!();
    }

    let lambda: Lambda = "9/10".parse().expect("literal");
    println!("\nwith λ = {lambda}, some exact values:");
    for (x, y) in [("a", "b"), ("aa", "ab"), ("abab", "aab")] {
        let (x, y): (Word, Word) = (x.parse().unwrap(), y.parse().unwrap());
        let k = family.distance(&x, &y).unwrap().exponent().unwrap();
        let (num, den) = lambda.pow(k);
        println!(
            "  d({x}, {y}) = λ^{k} = {num}/{den} = {}",
            lambda.decimal(k, 12)
        );
    }

    println!("\nthe smallest common set realizes each distance:");
    for (x, y) in [("a", "b"), ("aa", "ab"), ("aa", "aaa")] {
        let (x, y): (Word, Word) = (x.parse().unwrap(), y.parse().unwrap());
        let set = family.min_common_set(&x, &y).unwrap();
        println!(
            "  min common set of ({x}, {y}) is {set} at rank {}",
            family.rank(&set).unwrap()
        );
    }
}
