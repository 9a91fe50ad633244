//! For every pair of distinct short words, find the prepend letter that
//! contracts their distance by a full λ-level, certifying that the two
//! maps form a λ-contractive family for every λ in (0, 1).
//!
//!     cargo run --example contraction_certificate

use contrafix::setfamily::Family;
use contrafix::words::{words_up_to, Letter};

fn main() {
    let family = Family::new();
    let words = words_up_to(5);
    let mut by_letter = [0u64, 0];
    let mut worst_gap = u64::MAX;
    for x in &words {
        for y in &words {
            if x == y {
                continue;
            }
            let base = family.distance(x, y).unwrap().exponent().unwrap();
            let c = family.contraction_check(x, y).expect("contraction holds");
            let image = family
                .distance(&x.prepended(c), &y.prepended(c))
                .unwrap()
                .exponent_or_max();
            by_letter[(c == Letter::B) as usize] += 1;
            worst_gap = worst_gap.min(image - base);
        }
    }
    let pairs = by_letter[0] + by_letter[1];
    println!("{pairs} ordered pairs of distinct words of length ≤ 5 checked");
    println!(
        "  letter a contracts {} of them, letter b {}",
        by_letter[0], by_letter[1]
    );
    println!("  smallest exponent gain: {worst_gap} (must be ≥ 1)");

    // the gain in exponents is what makes the family λ-contractive for
    // every λ: d(cx, cy) ≤ λ^(k+1) = λ · λ^k whenever d(x, y) = λ^k
    let (x, y) = (
        "aa".parse::<contrafix::words::Word>().unwrap(),
        "ab".parse::<contrafix::words::Word>().unwrap(),
    );
    let c = family.contraction_check(&x, &y).unwrap();
    println!(
        "\nexample: d({x}, {y}) = {}, and prepending `{c}` gives d = {}",
        family.distance(&x, &y).unwrap(),
        family.distance(&x.prepended(c), &y.prepended(c)).unwrap()
    );
}
