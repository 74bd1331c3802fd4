//! Standard simplices, boundaries and horns, their homology, and the identity validator.

use waldkit::simpset::{basic_complex, component_count, homology, product, standard, validate_simplicial_identities, BasicKind};

fn main() -> waldkit::Result<()> {
    let d = 3;
    let shapes = [
        ("Δ[2]", basic_complex(BasicKind::Standard, 2, None, d)?),
        ("∂Δ[2]", basic_complex(BasicKind::Boundary, 2, None, d)?),
        ("Λ^1[2]", basic_complex(BasicKind::Horn, 2, Some(1), d)?),
        ("∂Δ[3]", basic_complex(BasicKind::Boundary, 3, None, d)?),
        ("J[1]", basic_complex(BasicKind::IntervalGroupoid, 1, None, d)?),
    ];
    for (name, x) in &shapes {
        let counts: Vec<usize> = (0..=d).map(|n| x.count(n)).collect();
        let h = homology(x, d - 1)?;
        println!("{:8} simplices {:?}  components {}  H = {}", name, counts, component_count(x), h.describe().join(", "));
    }

    let square = product(&standard(1, 3), &standard(1, 3))?;
    println!("Δ[1] x Δ[1]: {} 2-simplices, identities hold: {}", square.count(2), validate_simplicial_identities(&square).pass);
    let broken = square.with_face_override(2, 0, 1, 3);
    let r = validate_simplicial_identities(&broken);
    println!("after moving one face: pass {} ({:?})", r.pass, r.violation);
    Ok(())
}
