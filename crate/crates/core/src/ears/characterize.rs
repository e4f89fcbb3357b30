use std::collections::BTreeSet;

use crate::finite::{identify_type, reflect_with};
use crate::lattice::Lattice;
use crate::linalg::{rat, AmbientSpace, BilinearForm, RationalVector};
use crate::report::Report;

/// Checks, on a finite window of an alleged anisotropic root set, the four
/// hypotheses under which `IRC` of the set is a root system: reflection
/// invariance, an irreducible finite root system modulo the radical, a full
/// rank lattice, and no doubled roots.
pub fn characterize(window: &[RationalVector], space: &AmbientSpace) -> Report {
    let bound = window
        .iter()
        .map(|v| space.radical_part(v).max_abs())
        .max()
        .unwrap_or_else(|| rat(0));
    let mut report = Report::windowed(bound.to_integer().try_into().unwrap_or(i64::MAX));
    let set: BTreeSet<_> = window.iter().cloned().collect();

    report.push(
        "anisotropic",
        window
            .iter()
            .find(|v| space.pair(v, v) == rat(0) || !space.in_span_space(v))
            .map(|v| v.to_string()),
    );

    // reflections can only be checked when the image stays in the window
    let mut invariance = None;
    'outer: for a in window {
        for b in window {
            let Ok(img) = space.reflect(a, b) else {
                continue;
            };
            if space.radical_part(&img).max_abs() <= bound && !set.contains(&img) {
                invariance = Some(format!("r_{a}({b}) = {img}"));
                break 'outer;
            }
        }
    }
    report.push("invariance", invariance);

    let finite_form = BilinearForm::new(space.finite_gram()).expect("symmetric");
    let dots: BTreeSet<_> = window
        .iter()
        .map(|v| space.finite_part(v))
        .filter(|d| !d.is_zero())
        .collect();
    let dots: Vec<_> = dots.into_iter().collect();
    let closed = dots.iter().all(|a| {
        dots.iter()
            .all(|b| dots.binary_search(&reflect_with(&finite_form, a, b)).is_ok())
    });
    let finite_check = if !closed {
        Some("reduction is not closed under its reflections".to_string())
    } else {
        identify_type(&finite_form, &dots).err().map(|e| e.to_string())
    };
    report.push("finite root system", finite_check);

    let span_dim = space.nullity() + space.finite_rank();
    let projected: Vec<_> = window.iter().map(|v| v.slice(0..span_dim)).collect();
    let lattice = Lattice::from_generators(span_dim, &projected);
    report.push(
        "lattice",
        (!lattice.is_full_rank())
            .then(|| format!("generated group has rank {} < {span_dim}", lattice.rank())),
    );

    report.push(
        "reduced",
        window
            .iter()
            .find(|a| set.contains(&a.scaled(&rat(2))))
            .map(|a| a.to_string()),
    );
    report
}
