use knotperm::decide::{decide_unknot, CycleVerdict};
use knotperm::Permutation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: Permutation = "864275193".parse()?;
    match decide_unknot(&p)? {
        CycleVerdict::Unknot { tree } => {
            assert_eq!(tree.to_cycle(), p);
            println!("unknot via {tree}");
        }
        CycleVerdict::Knotted => println!("knotted"),
    }
    Ok(())
}
