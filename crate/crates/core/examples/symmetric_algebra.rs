//! Products of vectors in the symmetric algebra, their inner products, and
//! the permanent that computes the same number.

use fockpair::symmetric_algebra::{
    antidual_product, embed_product, enumerate_basis, inner_product, permanent_inner_oracle,
    symmetric_product, GradedElement, VectorList,
};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> fockpair::Result<()> {
    let basis = enumerate_basis(2, 3);
    println!("basis of S^3 C^2: {}", basis.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));

    let xs = VectorList::new(2, vec![vec![c(1.0, 0.0), c(0.5, -1.0)], vec![c(0.0, 1.0), c(2.0, 0.0)]])?;
    let ys = VectorList::new(2, vec![vec![c(0.3, 0.3), c(1.0, 0.0)], vec![c(-1.0, 0.0), c(0.0, 0.5)]])?;
    let (px, py) = (embed_product(&xs), embed_product(&ys));
    println!("<x1 x2 | y1 y2> coordinates = {}", inner_product(&px, &py)?);
    println!("<x1 x2 | y1 y2> permanent   = {}", permanent_inner_oracle(&xs, &ys)?);

    let v = GradedElement::from_vector(&[c(1.0, 0.0), c(1.0, 0.0)]);
    let square = symmetric_product(&v, &v, 2)?;
    println!("(v1 + v2)^2 = {:?}", square.component(2).unwrap());

    // the antidual product of 1 with anything is that thing
    let same = antidual_product(&GradedElement::vacuum(2), &square, 4)?;
    println!("1 * (v1 + v2)^2 differs by {:e}", same.max_abs_diff(&square));
    Ok(())
}
