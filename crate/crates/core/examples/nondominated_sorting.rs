//! Pareto dominance, non-dominated fronts and crowding distance on a small set.

use evohist::domain::{dominates, non_dominated_subset};
use evohist::optimizer::{crowding_distance, fast_nondominated_sort, nsga2_select};

fn main() -> evohist::Result<()> {
    let points = vec![
        vec![1.0, 5.0],
        vec![2.0, 3.0],
        vec![4.0, 1.0],
        vec![3.0, 4.0],
        vec![5.0, 5.0],
        vec![2.0, 3.0],
    ];
    println!("(1,5) dominates (5,5): {}", dominates(&points[0], &points[4])?);
    println!("(1,5) dominates (4,1): {}", dominates(&points[0], &points[2])?);
    println!("non-dominated subset: {:?}", non_dominated_subset(&points)?);

    for (rank, front) in fast_nondominated_sort(&points)?.iter().enumerate() {
        let members: Vec<&Vec<f64>> = front.iter().map(|&i| &points[i]).collect();
        let crowding = crowding_distance(&members)?;
        println!("front {rank}: {front:?} crowding {crowding:?}");
    }

    let survivors = nsga2_select(&points, 4)?;
    println!("NSGA-II keeps {:?}", survivors.indices);
    Ok(())
}
