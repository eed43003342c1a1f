use super::presentation::{letters_of, push_word, CoalgebraPresentation};
use crate::error::{Error, Result};
use crate::gradedlin::{in_span, BasisElement, Echelon, GradedBasis, Inserted, LinearMap, Vector};
use crate::sigmaop::{Cooperad, CooperadMap, Kind, Mono, Normalizer, LIE_ARITY_CAP};

/// The subcoalgebra spanned by `spanning` (named vectors in the ambient
/// basis). `overrides` replaces the induced differential on chosen elements,
/// given in the new basis; other elements inherit the ambient differential.
pub fn sub_coalgebra(
    ambient: &CoalgebraPresentation,
    name: &str,
    spanning: &[(String, Vector<usize>)],
    overrides: &[(usize, Vector<usize>)],
) -> Result<CoalgebraPresentation> {
    let field = ambient.field();
    let gens = ambient.generators();
    let mut elements = Vec::new();
    let mut span: Echelon<usize, usize> = Echelon::new(field);
    for (t, (label, v)) in spanning.iter().enumerate() {
        let mut degrees = v.keys().map(|&i| gens.degree(i));
        let Some(d) = degrees.next() else {
            return Err(Error::Validation(format!("{label} is the zero vector")));
        };
        if degrees.any(|e| e != d) {
            return Err(Error::Degree(format!("{label} is not homogeneous")));
        }
        if v.keys().any(|&i| i >= gens.len()) {
            return Err(Error::DimensionMismatch(format!(
                "{label} has an entry outside the ambient basis"
            )));
        }
        if !matches!(span.insert_tracked(v, t), Inserted::Pivot) {
            return Err(Error::Validation(format!(
                "{label} is linearly dependent on the others"
            )));
        }
        elements.push(BasisElement::new(label.clone(), d, 1));
    }
    let basis = GradedBasis::with_min_degree(elements, gens.min_degree())?;

    // Differential: induced, unless overridden.
    let mut columns = Vec::with_capacity(spanning.len());
    for (t, (label, v)) in spanning.iter().enumerate() {
        if let Some((_, dv)) = overrides.iter().find(|(i, _)| *i == t) {
            columns.push(dv.clone());
            continue;
        }
        let image = ambient.differential().apply(v);
        let coords = span
            .express(&image)
            .ok_or_else(|| Error::NotClosed(format!("d({label}) leaves the span")))?;
        columns.push(coords);
    }
    let d = LinearMap::new(field, basis.clone(), basis.clone(), -1, columns)?;

    // Decomposition: express Δ(s) through coinvariant words in the span.
    let cooperad = ambient.cooperad();
    let amb_nz = ambient.normalizer();
    let sub_nz = Normalizer::new(cooperad, letters_of(&basis));
    let mut decomposition = Vec::with_capacity(spanning.len());
    for (t, (label, v)) in spanning.iter().enumerate() {
        let mut delta: Vector<Mono> = Vector::zero(field);
        for (&g, c) in v.iter() {
            delta.add_scaled(ambient.decomposition(g), c);
        }
        if delta.is_zero() {
            decomposition.push(Vector::zero(field));
            continue;
        }
        let max_len = delta.keys().map(|m| m.arity()).max().unwrap_or(1);
        let deg = basis.degree(t);
        let candidates = sub_nz.enumerate(max_len, Some(deg), Some(deg))?;
        let mut images: Echelon<Mono, usize> = Echelon::new(field);
        for (k, m) in candidates.iter().enumerate() {
            if m.arity() == 1 && m.op == cooperad.counit() {
                continue;
            }
            let img = push_word(&amb_nz, &Vector::basis(field, m.op), &m.word, &|l| {
                spanning[l].1.clone()
            })?;
            images.insert_tracked(&img, k);
        }
        match images.express(&delta) {
            Some(coords) => decomposition.push(coords.map_keys(|&k| candidates[k].clone())),
            None => {
                let rest = images.reduce(&delta);
                let (m, _) = rest.first().expect("nonzero remainder");
                let spanning_vectors: Vec<Vector<usize>> =
                    spanning.iter().map(|(_, v)| v.clone()).collect();
                let outside: Vec<String> = m
                    .word
                    .iter()
                    .filter(|&&l| !in_span(field, &Vector::basis(field, l), &spanning_vectors))
                    .map(|&l| gens.get(l).label.clone())
                    .collect();
                let term = ambient.describe(&Vector::basis(field, m.clone()));
                return Err(Error::NotClosed(if outside.is_empty() {
                    format!("Δ({label}) has the term {term}, which is not a word in the span")
                } else {
                    format!(
                        "Δ({label}) has the term {term}, and {} lies outside the span",
                        outside.join(", ")
                    )
                }));
            }
        }
    }
    CoalgebraPresentation::new(name, cooperad.clone(), basis, d, decomposition)?.validated()
}

/// The same chain complex with decomposition labels mapped through `f`.
pub fn pushforward(f: &CooperadMap, x: &CoalgebraPresentation) -> Result<CoalgebraPresentation> {
    if f.source() != x.cooperad() {
        return Err(Error::Mismatch(format!(
            "{} is not a coalgebra over {}",
            x.name(),
            f.source().name()
        )));
    }
    let target = f.target().clone();
    let nz = Normalizer::new(&target, x.letters());
    let mut decomposition = Vec::new();
    for g in 0..x.generators().len() {
        let mut out = Vector::zero(x.field());
        for (m, c) in x.decomposition(g).iter() {
            let image = f.apply(m.arity(), m.op)?;
            let mut pushed = nz.normalize(&image, &m.word)?;
            // Arity-1 terms landing on the counit are implicit.
            pushed = pushed.filtered(|t| !(t.arity() == 1 && t.op == target.counit()));
            out.add_scaled(&pushed, c);
        }
        decomposition.push(out);
    }
    let y = CoalgebraPresentation::new(
        x.name(),
        target,
        x.generators().clone(),
        x.differential().clone(),
        decomposition,
    )?;
    let report = y.validate()?;
    if let Some(e) = report.to_error() {
        return Err(Error::Validation(format!(
            "the pushforward is not a coalgebra ({e})"
        )));
    }
    Ok(y)
}

/// The cocommutator Lie coalgebra of an `Ass^c`-coalgebra.
pub fn cocommutator(x: &CoalgebraPresentation) -> Result<CoalgebraPresentation> {
    let c = x.cooperad();
    if c.kind() != Kind::Ass || c.suspension() != 0 {
        return Err(Error::Mismatch(format!(
            "{} is not an Ass^c-coalgebra",
            x.name()
        )));
    }
    let m = c.max_arity().min(LIE_ARITY_CAP);
    let lie = Cooperad::preset("Lie^c", m, c.field())?;
    let f = CooperadMap::ass_to_lie(c, &lie)?;
    pushforward(&f, x)
}
