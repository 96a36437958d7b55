//! Class groups from reduced forms, checked against the analytic class
//! number formula, and fundamental units of real quadratic fields.

use std::f64::consts::PI;

use tamagawa::global::l_value;
use tamagawa::quadfield::forms::composition_table;
use tamagawa::quadfield::{class_group, fundamental_unit, is_fundamental_discriminant};

fn main() -> tamagawa::Result<()> {
    for disc in [-3, -4, -20, -23, -84, -47, -71] {
        let g = class_group(disc)?;
        let w = match disc {
            -3 => 6.0,
            -4 => 4.0,
            _ => 2.0,
        };
        let l = l_value(disc, 1e-10)?.value.value;
        let analytic = l * (disc.abs() as f64).sqrt() * w / (2.0 * PI);
        let forms: Vec<String> = g.forms.iter().map(|f| f.to_string()).collect();
        println!("D = {disc:>4}: h = {} ({}), analytic {analytic:.8}, forms {}", g.h, g.structure, forms.join(" "));
    }

    let g = class_group(-23)?;
    let table = composition_table(&g);
    println!("\ncomposition for D = -23:");
    for f in &g.forms {
        let row: Vec<String> = g.forms.iter().map(|h| table[&(*f, *h)].to_string()).collect();
        println!("  {f} | {}", row.join(" "));
    }

    println!();
    for d in [5i64, 8, 12, 13, 21, 28, 61, 376] {
        if !is_fundamental_discriminant(d) {
            continue;
        }
        let u = fundamental_unit(d)?;
        println!("D = {d:>3}: ε = {} + {}ω, N(ε) = {:>2}, R = {:.9}", u.x, u.y, u.norm, u.regulator);
    }
    Ok(())
}
