//! Das-Dennis reference directions and their counts for common settings.

use evohist::optimizer::{das_dennis, default_partitions, default_population_size, direction_count};

fn main() -> evohist::Result<()> {
    let small = das_dennis(3, 4)?;
    println!("M=3, p=4: {} directions", small.len());
    for d in &small.directions {
        println!("  {d:?}");
    }
    for m in 2..=8 {
        let p = default_partitions(m);
        println!(
            "M={m}: default p={p}, {} directions, default population {}",
            direction_count(m, p).unwrap_or(0),
            default_population_size(m)
        );
    }
    Ok(())
}
