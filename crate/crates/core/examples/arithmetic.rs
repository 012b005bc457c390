// Laurent polynomials in two free variables: parsing, products, the
// anti-automorphism `star`, and exact right division.

use ncl::ncpoly::{right_divide, DEFAULT_SUPPORT_ROUNDS};
use ncl::{NCPoly, Word};

pub fn run_example() -> ncl::Result<()> {
    let a: NCPoly = "1 + y x^-1".parse()?;
    let b: NCPoly = "x y^-1 - 2 y".parse()?;
    let ab = &a * &b;
    println!("({a}) ({b}) = {ab}");

    // words reduce freely: x x^-1 is the empty word
    let w: Word = "x y y^-1 x^-1 y".parse()?;
    println!("reduced word: {w}");

    // star reverses words and swaps x and y
    println!("star({a}) = {}", a.star());
    assert_eq!(a.star().star(), a);
    assert_eq!((&a * &b).star(), &b.star() * &a.star());

    let q = right_divide(&ab, &b, DEFAULT_SUPPORT_ROUNDS)?;
    println!("({ab}) / ({b}) = {q}");
    assert_eq!(q, a);

    println!("abelianized: {}", ab.abelianize());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncl::Result<()> {
    run_example()
}
