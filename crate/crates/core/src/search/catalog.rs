//! Named instances: the extremal families, the known counterexamples and
//! the demonstration inputs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cauchy::{counterexample_measure, PointMeasure};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

type C64 = Complex64;

/// Ascending coefficients of Miller's degree 19 local maximum.
pub const MILLER: [(usize, f64); 4] = [(0, -0.492806889), (17, 0.896690269), (18, -0.881444934), (19, 1.0)];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    Polynomial { polynomial: Polynomial },
    Measure { measure: PointMeasure },
    /// The cubic whose circulant matrix has first row `(-a-b, a, b)`.
    Circulant { a: C64, b: C64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedInstance {
    pub name: String,
    pub description: String,
    pub instance: Instance,
}

fn poly(coeffs: &[f64]) -> Instance {
    Instance::Polynomial {
        polynomial: Polynomial::from_real(coeffs).expect("nonzero"),
    }
}

fn example1(n: usize) -> Result<Instance> {
    if n < 3 {
        return Err(Error::DegreeTooSmall { required: 3, found: n });
    }
    let mut roots = vec![C64::new(1.0, 0.0); n - 1];
    roots.push(C64::new(0.0, 0.0));
    Ok(Instance::Polynomial {
        polynomial: Polynomial::from_root_list(&roots, C64::new(1.0, 0.0))?,
    })
}

fn miller() -> Instance {
    let mut c = [0.0; 20];
    for (k, v) in MILLER {
        c[k] = v;
    }
    poly(&c)
}

fn roots_of_unity(n: usize) -> Result<Instance> {
    if n < 2 {
        return Err(Error::DegreeTooSmall { required: 2, found: n });
    }
    let mut c = vec![0.0; n + 1];
    c[0] = -1.0;
    c[n] = 1.0;
    Ok(poly(&c))
}

fn split(name: &str) -> Result<(&str, Option<usize>)> {
    let name = name.trim();
    match name.split_once('(') {
        None => Ok((name, None)),
        Some((base, rest)) => {
            let arg = rest
                .strip_suffix(')')
                .and_then(|a| a.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::UnknownInstance(name.to_string()))?;
            Ok((base.trim(), Some(arg)))
        }
    }
}

/// Resolves a name such as `miller`, `example1(7)` or `claim93(4)`.
///
/// Parametrized families default to `example1(5)`, `claim93(3)` and
/// `roots-of-unity(5)`.
pub fn named_instance(name: &str) -> Result<NamedInstance> {
    let (base, arg) = split(name)?;
    let unknown = || Error::UnknownInstance(name.to_string());
    let (canonical, description, instance) = match (base, arg) {
        ("example1", n) => {
            let n = n.unwrap_or(5);
            (format!("example1({n})"), format!("z(z-1)^{}", n - 1), example1(n)?)
        }
        ("miller", None) => (
            "miller".into(),
            "z^19 - 0.881444934 z^18 + 0.896690269 z^17 - 0.492806889".into(),
            miller(),
        ),
        ("quartic", None) => ("quartic".into(), "z^4 - 3z^2 - 4".into(), poly(&[-4.0, 0.0, -3.0, 0.0, 1.0])),
        ("sharp-real", None) => ("sharp-real".into(), "(z^2 - 1)^2".into(), poly(&[1.0, 0.0, -2.0, 0.0, 1.0])),
        ("cubic", None) => ("cubic".into(), "z^3 - z".into(), poly(&[0.0, -1.0, 0.0, 1.0])),
        ("claim93", n) => {
            let n = n.unwrap_or(3);
            (
                format!("claim93({n})"),
                format!("zero measure of (z-1)(z^2+1)^{n}"),
                Instance::Measure {
                    measure: counterexample_measure(n)?,
                },
            )
        }
        ("circulant", None) => (
            "circulant".into(),
            "cubic circulant with a = 1, b = 2i".into(),
            Instance::Circulant {
                a: C64::new(1.0, 0.0),
                b: C64::new(0.0, 2.0),
            },
        ),
        ("roots-of-unity", n) => {
            let n = n.unwrap_or(5);
            (format!("roots-of-unity({n})"), format!("z^{n} - 1"), roots_of_unity(n)?)
        }
        _ => return Err(unknown()),
    };
    Ok(NamedInstance {
        name: canonical,
        description,
        instance,
    })
}

/// The fixed catalog.
pub fn named_instances() -> Vec<NamedInstance> {
    let mut names: Vec<String> = (3..=12).map(|n| format!("example1({n})")).collect();
    names.extend(["miller", "quartic", "sharp-real", "cubic"].map(String::from));
    names.extend((3..=6).map(|n| format!("claim93({n})")));
    names.push("circulant".into());
    names.push("roots-of-unity(5)".into());
    names.iter().map(|n| named_instance(n).expect("catalog entry")).collect()
}
