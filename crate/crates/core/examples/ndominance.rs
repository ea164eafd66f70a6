//! Components of the n-jump graph next to (n-core, size) classes.

use affgr::klmw::n_dominance_components;

fn main() {
    for (n, size) in [(2, 4), (3, 6)] {
        let r = n_dominance_components(n, size).unwrap();
        println!("n={n} size={size}: {} components, {} classes, coincide: {}", r.components.len(), r.classes.len(), r.coincide());
        for (core, class) in &r.classes {
            let names: Vec<String> = class.iter().map(|p| p.to_string()).collect();
            println!("  core {core}: {}", names.join(" "));
        }
    }
}
