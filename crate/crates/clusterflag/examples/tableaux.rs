//! The tableau monoid: unions, factors, reduction, dominance, the fill-up
//! map and the exchange rule.
//!
//!     cargo run --example tableaux

use clusterflag::young_tableaux::{initial_tableau, tableau_mutation, Tableau};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Tableau::from_columns(&[vec![1, 3], vec![2, 4]])?;
    let b = Tableau::column(&[1, 2])?;
    let u = a.union(&b);
    println!("T =\n{a}");
    println!("T ∪ [1,2] =\n{u}");
    println!("(T ∪ [1,2]) / [1,2] == T: {}", u.quotient(&b)? == a);
    println!("reduced: {}", u.reduce() == a.reduce());

    let (s, t) = (Tableau::column(&[1, 4])?, Tableau::column(&[2, 3])?);
    println!("{:?} vs {:?}: {:?}", s.columns(), t.columns(), s.dominance_compare(&t)?);

    // Initial tableau of the minor with rows [1,2] ∪ [4,4] in Fl_{2,4;6},
    // and its image in the Grassmannian Gr_{4;8}.
    let init = initial_tableau(6, &[2, 4], 1, 1, 4)?;
    println!("initial tableau:\n{init}");
    println!("filled up:\n{}", init.fill_up(6, &[2, 4])?);

    // Exchange in Gr_{2;4}: [1,3] * T' = max([1,2][3,4], [1,4][2,3]).
    let x = Tableau::column(&[1, 3])?;
    let ins = [Tableau::column(&[1, 2])?, Tableau::column(&[3, 4])?];
    let outs = [Tableau::column(&[1, 4])?, Tableau::column(&[2, 3])?];
    let ex = tableau_mutation(&x, &ins.iter().collect::<Vec<_>>(), &outs.iter().collect::<Vec<_>>())?;
    println!("mutating [1,3] gives\n{}", ex.tableau);
    Ok(())
}
