//! Orbit analysis: which sets absorb the tail of w, w², w³, …, and how
//! chain points (finite approximations of completion points) move under
//! the two maps.
//!
//!     cargo run --example orbit_diagnostics

use contrafix::dynamics::ChainPoint;
use contrafix::setfamily::{Family, SetDescriptor};
use contrafix::words::{Letter, Word};

fn main() {
    let family = Family::new();

    for w in ["a", "ab", "aab"] {
        let word: Word = w.parse().expect("literal");
        let tail = family.orbit_tail_sets(&word).expect("nonempty word");
        println!("orbit tail of {word}:");
        for set in &tail {
            println!("  S_{:<5} {set}", family.rank(set).expect("desk scale"));
        }
        println!(
            "  proper Cauchy: {}\n",
            family.cauchy_certificate(&word).expect("nonempty word")
        );
    }

    // a chain point heading towards the a-adic limit, pushed by both maps
    let chain = vec![
        SetDescriptor::root_of_all(),
        "W:a".parse().unwrap(),
        "A:a:1:0".parse().unwrap(),
        "A:a:2:0".parse().unwrap(),
    ];
    let point = ChainPoint::new(&family, chain).expect("valid chain");
    for c in Letter::ALL {
        let pushed = family.push_point(c, &point);
        let rendered: Vec<String> = pushed.chain().iter().map(|s| s.to_string()).collect();
        println!("push by {c}: {}", rendered.join(" ⊃ "));
    }
}
