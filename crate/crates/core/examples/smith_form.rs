//! Smith and Hermite normal forms of a small integer matrix.

use tamagawa::exact::{hermite_normal_form, smith_normal_form, AbelianGroupInvariants, IntMatrix};

fn show(name: &str, m: &IntMatrix) {
    println!("{name}:");
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| format!("{x:>4}")).collect();
        println!("  [{}]", row.join(""));
    }
}

fn main() {
    let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    show("M", &m);
    let s = smith_normal_form(&m);
    show("U·M·V", &s.u.mul(&m).mul(&s.v));
    println!("invariant factors {:?}", s.d.iter().map(|d| d.to_string()).collect::<Vec<_>>());
    println!("cokernel {}", AbelianGroupInvariants::from_snf_diagonal(&s.d, 0));
    let h = hermite_normal_form(&m);
    show("HNF", &h.h);
    println!("index of the row lattice {:?}", h.index().map(|i| i.to_string()));
}
