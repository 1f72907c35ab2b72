//! The grid, its order, slices and the restriction of a function to a slice.

use sutarski::generators::gen_unique_not_super;
use sutarski::{restrict, slice_points, LatticeMap, LatticeSpec, SliceEntry::*};

fn main() -> sutarski::Result<()> {
    let spec = LatticeSpec::new(3, 2)?;
    println!("{} points, {} slices", spec.size(), spec.slice_count().unwrap());

    let a = spec.point(vec![2, 1])?;
    let b = spec.point(vec![1, 2])?;
    println!("{a} <= {b}: {}, {b} <= {a}: {}", a.leq(&b), b.leq(&a));
    println!("canonical index of {a}: {}", spec.index_of(&a));

    let s = spec.slice(vec![Free, Fixed(3)])?;
    let pts: Vec<String> = slice_points(&spec, &s).map(|p| p.to_string()).collect();
    println!("slice {s} is a 1-slice: {}, points {}", s.is_i_slice(1), pts.join(" "));

    let uns = gen_unique_not_super(LatticeSpec::new(2, 2)?)?;
    let s = LatticeSpec::new(2, 2)?.slice(vec![Free, Fixed(1)])?;
    let fs = restrict(&uns, s.clone())?;
    for x in fs.domain() {
        println!("f{s}({x}) = {}   f({x}) = {}", fs.eval(&x)?, uns.eval(&x)?);
    }
    Ok(())
}
