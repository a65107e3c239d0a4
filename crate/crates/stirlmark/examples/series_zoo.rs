//! Print the named generating functions to a small order, in the derived
//! EGF view (coefficient of t^n times n!).
//!
//! ```bash
//! cargo run --release -p stirlmark --example series_zoo
//! ```

use stirlmark::named::{named_series, SeriesName};

fn main() {
    for name in SeriesName::ALL {
        let series = named_series(name, 4, 2).unwrap();
        println!("{}:", name.name());
        for line in series.print_lines_egf().lines() {
            println!("  {line}");
        }
        println!();
    }
}
