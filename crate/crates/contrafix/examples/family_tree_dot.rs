//! Emit the family tree in DOT form; pipe into Graphviz to draw it:
//!
//!     cargo run --example family_tree_dot | dot -Tsvg > family.svg

use contrafix::harness::{export_tree, TreeFormat};
use contrafix::setfamily::Family;

fn main() {
    let family = Family::new();
    print!(
        "{}",
        export_tree(&family, 3, TreeFormat::Dot).expect("desk-scale export")
    );
}
