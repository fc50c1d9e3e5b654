//! Named group catalog for the CLI: S<n>, A<n>, D<2n>, C<n>, and Q8 as a
//! permutation group (regular representation).

use crate::error::{Error, Result};
use crate::permgroup::Permutation;

/// Generators for a catalog name; the degree of the permutation
/// representation is returned alongside.
pub fn catalog_group(name: &str) -> Result<(usize, Vec<Permutation>)> {
    let name = name.trim();
    if name.eq_ignore_ascii_case("Q8") {
        return Ok(quaternion_regular());
    }
    let (kind, rest) = name.split_at(1);
    let n: usize = rest
        .parse()
        .map_err(|_| Error::Parse(format!("unknown group name '{name}'")))?;
    match kind {
        "S" | "s" => {
            if n == 0 {
                return Err(Error::Parse("S0 is not a group".into()));
            }
            if n == 1 {
                return Ok((1, vec![]));
            }
            let gens = vec![
                Permutation::parse_cycles("(0 1)", n)?,
                cycle(0, n, n)?,
            ];
            Ok((n, gens))
        }
        "A" | "a" => {
            if n <= 2 {
                return Ok((n.max(1), vec![]));
            }
            if n == 3 {
                return Ok((3, vec![Permutation::parse_cycles("(0 1 2)", 3)?]));
            }
            let mut gens = vec![Permutation::parse_cycles("(0 1 2)", n)?];
            if n % 2 == 1 {
                gens.push(cycle(0, n, n)?);
            } else {
                gens.push(cycle(1, n, n)?);
            }
            Ok((n, gens))
        }
        "C" | "c" => {
            if n == 0 {
                return Err(Error::Parse("C0 is not a group".into()));
            }
            if n == 1 {
                return Ok((1, vec![]));
            }
            Ok((n, vec![cycle(0, n, n)?]))
        }
        "D" | "d" => {
            // D<2n> = dihedral group of order 2n on n points
            if n < 4 || n % 2 != 0 {
                return Err(Error::Parse(format!(
                    "dihedral name D{n} must be D<2m> with 2m >= 4"
                )));
            }
            let points = n / 2;
            let rot = cycle(0, points, points)?;
            // reflection fixing 0: i -> (points - i) mod points
            let mut refl = String::new();
            for i in 1..=(points - 1) / 2 {
                refl.push_str(&format!("({} {})", i, points - i));
            }
            if refl.is_empty() {
                refl = "()".into();
            }
            let refl = Permutation::parse_cycles(&refl, points)?;
            Ok((points, vec![rot, refl]))
        }
        _ => Err(Error::Parse(format!("unknown group name '{name}'"))),
    }
}

fn cycle(from: usize, to: usize, degree: usize) -> Result<Permutation> {
    let pts: Vec<String> = (from..to).map(|i| i.to_string()).collect();
    Permutation::parse_cycles(&format!("({})", pts.join(" ")), degree)
}

/// Q8 on its 8 elements [1, i, -1, -i, j, k, -j, -k] by right multiplication.
fn quaternion_regular() -> (usize, Vec<Permutation>) {
    let by_i = Permutation::from_images(vec![1, 2, 3, 0, 7, 4, 5, 6]).unwrap();
    let by_j = Permutation::from_images(vec![4, 5, 6, 7, 2, 3, 0, 1]).unwrap();
    (8, vec![by_i, by_j])
}
