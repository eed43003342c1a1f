use super::presentation::{push_word, CoalgebraPresentation};
use crate::error::{Error, Result};
use crate::gradedlin::{LinearMap, Vector};

/// A map of coalgebras over the same cooperad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraMorphism {
    source: CoalgebraPresentation,
    target: CoalgebraPresentation,
    map: LinearMap,
}

impl CoalgebraMorphism {
    /// Checks that `map` commutes with the differentials and decompositions.
    pub fn new(
        source: CoalgebraPresentation,
        target: CoalgebraPresentation,
        map: LinearMap,
    ) -> Result<Self> {
        if source.cooperad() != target.cooperad() {
            return Err(Error::Mismatch(format!(
                "{} and {} are over different cooperads",
                source.name(),
                target.name()
            )));
        }
        if map.source() != source.generators()
            || map.target() != target.generators()
            || map.degree() != 0
        {
            return Err(Error::Mismatch(
                "the map must be degree 0 between the generators".into(),
            ));
        }
        let fd = map.compose(source.differential())?;
        let df = target.differential().compose(&map)?;
        if fd != df {
            let g = (0..source.generators().len())
                .find(|&g| fd.column(g) != df.column(g))
                .unwrap_or(0);
            return Err(Error::NotChainMap(format!(
                "f∘d ≠ d∘f on {}",
                source.generators().get(g).label
            )));
        }
        let nz = target.normalizer();
        let field = source.field();
        for g in 0..source.generators().len() {
            let mut lhs = Vector::zero(field);
            for (m, c) in source.decomposition(g).iter() {
                let pushed = push_word(&nz, &Vector::basis(field, m.op), &m.word, &|l| {
                    map.column(l).clone()
                })?;
                lhs.add_scaled(&pushed, c);
            }
            let mut rhs = Vector::zero(field);
            for (&h, c) in map.column(g).iter() {
                rhs.add_scaled(target.decomposition(h), c);
            }
            if lhs != rhs {
                return Err(Error::Validation(format!(
                    "the map does not commute with the decomposition of {}",
                    source.generators().get(g).label
                )));
            }
        }
        Ok(CoalgebraMorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(x: &CoalgebraPresentation) -> Self {
        CoalgebraMorphism {
            source: x.clone(),
            target: x.clone(),
            map: LinearMap::identity(x.field(), x.generators().clone()),
        }
    }

    /// `X → 0`.
    pub fn to_zero(x: &CoalgebraPresentation) -> Self {
        let zero = CoalgebraPresentation::zero("0", x.cooperad().clone());
        CoalgebraMorphism {
            map: LinearMap::zero(
                x.field(),
                x.generators().clone(),
                zero.generators().clone(),
                0,
            ),
            source: x.clone(),
            target: zero,
        }
    }

    /// `0 → X`.
    pub fn from_zero(x: &CoalgebraPresentation) -> Self {
        let zero = CoalgebraPresentation::zero("0", x.cooperad().clone());
        CoalgebraMorphism {
            map: LinearMap::zero(
                x.field(),
                zero.generators().clone(),
                x.generators().clone(),
                0,
            ),
            source: zero,
            target: x.clone(),
        }
    }

    pub fn source(&self) -> &CoalgebraPresentation {
        &self.source
    }

    pub fn target(&self) -> &CoalgebraPresentation {
        &self.target
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    /// Whether the underlying map is injective in every degree.
    pub fn is_degreewise_mono(&self) -> bool {
        crate::gradedlin::rank_of(self.source.field(), self.map.columns())
            == self.source.generators().len()
    }
}
