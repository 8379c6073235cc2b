//! Named generator sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::diffop::DiffOperator;
use super::poly::Var;
use super::{GaussianRational, SymopError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Catalog {
    /// `{∂z, z∂z, ζ∂z, ∂ζ, ζ∂ζ, z∂ζ}`.
    #[serde(rename = "X")]
    X,
    /// `X` with `z̄` in place of `z`.
    #[serde(rename = "XBAR")]
    XBar,
    /// Generators of the QHT algebra.
    #[serde(rename = "G")]
    G,
    /// `{x1, x4, x3}`.
    #[serde(rename = "HEISENBERG_A")]
    HeisenbergA,
    /// `{x1, x4, x6}`.
    #[serde(rename = "HEISENBERG_B")]
    HeisenbergB,
    /// `{x3, x6, x5 − x2}`.
    #[serde(rename = "SL2")]
    Sl2,
}

impl Catalog {
    pub const ALL: [Catalog; 6] = [
        Catalog::X,
        Catalog::XBar,
        Catalog::G,
        Catalog::HeisenbergA,
        Catalog::HeisenbergB,
        Catalog::Sl2,
    ];

    pub fn size(self) -> usize {
        match self {
            Catalog::X | Catalog::XBar | Catalog::G => 6,
            Catalog::HeisenbergA | Catalog::HeisenbergB | Catalog::Sl2 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Catalog::X => "X",
            Catalog::XBar => "XBAR",
            Catalog::G => "G",
            Catalog::HeisenbergA => "HEISENBERG_A",
            Catalog::HeisenbergB => "HEISENBERG_B",
            Catalog::Sl2 => "SL2",
        }
    }

    /// Display label of the 1-based `index`-th basis element.
    pub fn label(self, index: usize) -> String {
        match self {
            Catalog::X => format!("x{index}"),
            Catalog::XBar => format!("xbar{index}"),
            Catalog::G => format!("g{index}"),
            Catalog::HeisenbergA => ["x1", "x4", "x3"][index - 1].to_string(),
            Catalog::HeisenbergB => ["x1", "x4", "x6"][index - 1].to_string(),
            Catalog::Sl2 => ["x3", "x6", "x5-x2"][index - 1].to_string(),
        }
    }

    pub fn basis(self) -> Vec<DiffOperator> {
        (1..=self.size()).map(|i| generator(self, i).expect("index in range")).collect()
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Catalog {
    type Err = SymopError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Catalog::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SymopError::UnknownCatalog(s.to_string()))
    }
}

fn x_generator(index: usize, z: Var) -> DiffOperator {
    use Var::Zeta;
    match index {
        1 => DiffOperator::partial(z),
        2 => DiffOperator::linear(z, z),
        3 => DiffOperator::linear(Zeta, z),
        4 => DiffOperator::partial(Zeta),
        5 => DiffOperator::linear(Zeta, Zeta),
        6 => DiffOperator::linear(z, Zeta),
        _ => unreachable!(),
    }
}

fn g_generator(index: usize) -> DiffOperator {
    let x = |i| x_generator(i, Var::Z);
    let i = GaussianRational::i();
    match index {
        1 => &x(3) + &x(6),
        2 => (&x(6) - &x(3)).scale(&i),
        3 => &x(2) - &x(5),
        4 => -(&x(2) + &x(5)),
        5 => x(1),
        6 => -x(4),
        _ => unreachable!(),
    }
}

/// The `index`-th (1-based) generator of `catalog`.
///
/// `G` uses the printed differential forms, so `g3 = z∂z − ζ∂ζ`.
pub fn generator(catalog: Catalog, index: usize) -> Result<DiffOperator, SymopError> {
    if index == 0 || index > catalog.size() {
        return Err(SymopError::UnknownIndex { catalog, index });
    }
    let x = |i| x_generator(i, Var::Z);
    Ok(match catalog {
        Catalog::X => x(index),
        Catalog::XBar => x_generator(index, Var::ZBar),
        Catalog::G => g_generator(index),
        Catalog::HeisenbergA => x([1, 4, 3][index - 1]),
        Catalog::HeisenbergB => x([1, 4, 6][index - 1]),
        Catalog::Sl2 => match index {
            1 => x(3),
            2 => x(6),
            _ => &x(5) - &x(2),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> DiffOperator {
        s.parse().unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(generator(Catalog::X, 3).unwrap(), op("zeta*dz"));
        assert_eq!(generator(Catalog::G, 1).unwrap(), op("zeta*dz+z*dzeta"));
        assert_eq!(generator(Catalog::Sl2, 3).unwrap(), op("zeta*dzeta+-1*z*dz"));
    }

    #[test]
    fn full_catalogs() {
        let x: Vec<String> = Catalog::X.basis().iter().map(|o| o.to_string()).collect();
        assert_eq!(x, ["dz", "z*dz", "zeta*dz", "dzeta", "zeta*dzeta", "z*dzeta"]);
        let xbar: Vec<String> = Catalog::XBar.basis().iter().map(|o| o.to_string()).collect();
        assert_eq!(xbar, ["dzbar", "zbar*dzbar", "zeta*dzbar", "dzeta", "zeta*dzeta", "zbar*dzeta"]);
        let g = Catalog::G.basis();
        assert_eq!(g[1], op("-i*zeta*dz+i*z*dzeta"));
        assert_eq!(g[2], op("z*dz+-1*zeta*dzeta"));
        assert_eq!(g[3], op("-1*z*dz+-1*zeta*dzeta"));
        assert_eq!(g[4], op("dz"));
        assert_eq!(g[5], op("-1*dzeta"));
        assert_eq!(Catalog::HeisenbergA.basis(), vec![op("dz"), op("dzeta"), op("zeta*dz")]);
        assert_eq!(Catalog::HeisenbergB.basis(), vec![op("dz"), op("dzeta"), op("z*dzeta")]);
    }

    #[test]
    fn index_bounds() {
        assert_eq!(generator(Catalog::X, 0), Err(SymopError::UnknownIndex { catalog: Catalog::X, index: 0 }));
        assert!(generator(Catalog::X, 7).is_err());
        assert!(generator(Catalog::Sl2, 4).is_err());
        assert!(generator(Catalog::HeisenbergB, 3).is_ok());
    }

    #[test]
    fn catalog_names_parse() {
        for c in Catalog::ALL {
            assert_eq!(c.name().parse::<Catalog>().unwrap(), c);
        }
        assert!("Y".parse::<Catalog>().is_err());
    }
}
