use crate::classes::eta_aa_inv;
use crate::constructions::{example21_groups, extraspecial_p3, DEFAULT_MAX_ORDER};
use crate::error::{GroupError, Result};
use crate::group::{Elem, Group, Subgroup};
use crate::structure::{center, centralizer};

use super::report::{ReportBuilder, VerificationReport, Witness};

/// `η(a^H (a⁻¹)^H)` with `H` treated as a group in its own right.
pub fn eta_in_subgroup(g: &Group, h: &Subgroup, a: Elem) -> Result<usize> {
    g.check_index(a)?;
    if !h.contains(a) {
        return Err(GroupError::NotASubgroup(format!(
            "element {a} is not in the subgroup"
        )));
    }
    let (hg, embed) = h.to_group(g, "H");
    let local = embed.binary_search(&a).expect("a is in H");
    eta_aa_inv(&hg, local)
}

/// `(η_H, η_G)` for the extraspecial group of order `p³`, `a` the least
/// noncentral element and `H = C_G(a)`.
pub fn extraspecial_example(p: usize) -> Result<(usize, usize)> {
    let g = extraspecial_p3(p, DEFAULT_MAX_ORDER)?;
    let z = center(&g);
    let a = g
        .elements()
        .find(|&x| !z.contains(x))
        .expect("extraspecial groups are nonabelian");
    let h = centralizer(&g, a);
    Ok((eta_in_subgroup(&g, &h, a)?, eta_aa_inv(&g, a)?))
}

/// `(η_H, η_G)` for the wreath-product example at prime `p`.
pub fn wreath_example(p: usize) -> Result<(usize, usize)> {
    let ex = example21_groups(p, DEFAULT_MAX_ORDER)?;
    Ok((
        eta_in_subgroup(&ex.g, &ex.h, ex.a)?,
        eta_aa_inv(&ex.g, ex.a)?,
    ))
}

type ExampleFn = fn(usize) -> Result<(usize, usize)>;

/// Reproduces the η values of the two worked examples.
pub fn verify_examples() -> VerificationReport {
    let mut rb = ReportBuilder::new("examples", "worked examples");
    rb.scope("extraspecial p^3 at p = 3, 5; wreath example at p = 2, 3");
    let cases: [(&str, usize, ExampleFn, (usize, usize)); 4] = [
        ("extraspecial p^3", 3, extraspecial_example, (1, 3)),
        ("extraspecial p^3", 5, extraspecial_example, (1, 5)),
        ("wreath example", 3, wreath_example, (3, 2)),
        ("wreath example", 2, wreath_example, (2, 2)),
    ];
    for (name, p, f, (exp_h, exp_g)) in cases {
        let w = Witness::new(name)
            .with("p", p)
            .with("expected_eta_h", exp_h)
            .with("expected_eta_g", exp_g);
        match f(p) {
            Ok((eh, eg)) => {
                let w = w.with("eta_h", eh).with("eta_g", eg);
                rb.record(eh == exp_h && eg == exp_g, w);
            }
            Err(e) => rb.record(
                false,
                Witness {
                    note: format!("{name}: {e}"),
                    ..w
                },
            ),
        }
    }
    rb.finish("")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cyclic;

    #[test]
    fn examples_match() {
        let r = verify_examples();
        assert!(r.passed(), "{r}: {:?}", r.witnesses);
        assert_eq!(r.cases_checked, 4);
    }

    #[test]
    fn eta_in_subgroup_rejects_outside() {
        let g = cyclic(6).unwrap();
        let h = g.closure([2]);
        assert!(eta_in_subgroup(&g, &h, 1).is_err());
        assert_eq!(eta_in_subgroup(&g, &h, 2).unwrap(), 1);
    }
}
