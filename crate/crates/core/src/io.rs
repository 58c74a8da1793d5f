//! JSON stack and cavity files.
//!
//! ```json
//! {"layers": [
//!   {"material": "perfect_conductor", "thickness_m": "semi_infinite"},
//!   {"material": "vacuum", "thickness_m": 1e-6},
//!   {"material": {"model": "drude", "omega_p": 1.37e16, "gamma": 5.32e13},
//!    "thickness_m": "semi_infinite"}
//! ]}
//! ```
//!
//! A cavity file holds `medium`, `slab` (`material`, `thickness_m`), `d1_m`,
//! `d2_m`, `left_mirror` and `right_mirror`; a mirror is either
//! `"perfect_conductor"` or an array of layers in stack order.

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::casimir::{CavityConfig, Mirror, Slab};
use crate::error::{Error, Result};
use crate::materials::MaterialModel;
use crate::stack::{Layer, Stack, Thickness};

const SEMI_INFINITE: &str = "semi_infinite";

#[derive(Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
enum ModelFile {
    Vacuum,
    PerfectConductor,
    Constant { epsilon: f64 },
    Drude { omega_p: f64, gamma: f64 },
    Lorentz { omega_0: f64, omega_p: f64, gamma: f64 },
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse("$", e.to_string()))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::parse(path, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::parse(path, format!("missing field `{name}`")))
}

fn reject_unknown(obj: &Map<String, Value>, path: &str, known: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !known.contains(&k.as_str())) {
        Some(k) => Err(Error::parse(
            format!("{path}.{k}"),
            format!("unknown field, expected one of {known:?}"),
        )),
        None => Ok(()),
    }
}

fn number(v: &Value, path: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::parse(path, format!("expected a number, got {v}")))
}

fn material(v: &Value, path: &str) -> Result<MaterialModel> {
    let model = match v {
        Value::String(s) => match s.as_str() {
            "vacuum" => MaterialModel::Vacuum,
            "perfect_conductor" => MaterialModel::PerfectConductor,
            other => {
                return Err(Error::parse(
                    path,
                    format!("unknown material `{other}`, expected \"vacuum\", \"perfect_conductor\" or an object with a `model` field"),
                ))
            }
        },
        Value::Object(_) => {
            let parsed = ModelFile::deserialize(v).map_err(|e| Error::parse(path, e.to_string()))?;
            match parsed {
                ModelFile::Vacuum => MaterialModel::Vacuum,
                ModelFile::PerfectConductor => MaterialModel::PerfectConductor,
                ModelFile::Constant { epsilon } => MaterialModel::Constant { epsilon },
                ModelFile::Drude { omega_p, gamma } => MaterialModel::Drude { omega_p, gamma },
                ModelFile::Lorentz {
                    omega_0,
                    omega_p,
                    gamma,
                } => MaterialModel::Lorentz {
                    omega_0,
                    omega_p,
                    gamma,
                },
            }
        }
        _ => return Err(Error::parse(path, format!("expected a material, got {v}"))),
    };
    model.validate().map_err(|e| match e {
        Error::InvalidParameter { name, value, reason } => {
            Error::parse(format!("{path}.{name}"), format!("{value}: {reason}"))
        }
        other => Error::parse(path, other.to_string()),
    })?;
    Ok(model)
}

fn thickness(v: &Value, path: &str) -> Result<Thickness> {
    match v {
        Value::String(s) if s == SEMI_INFINITE => Ok(Thickness::SemiInfinite),
        Value::Number(_) => {
            let d = number(v, path)?;
            if d > 0.0 && d.is_finite() {
                Ok(Thickness::Finite(d))
            } else {
                Err(Error::parse(path, format!("thickness must be positive, got {d}")))
            }
        }
        _ => Err(Error::parse(
            path,
            format!("expected a thickness in metres or \"{SEMI_INFINITE}\", got {v}"),
        )),
    }
}

fn layer(v: &Value, path: &str) -> Result<Layer> {
    let obj = object(v, path)?;
    reject_unknown(obj, path, &["material", "thickness_m"])?;
    let material = material(field(obj, path, "material")?, &format!("{path}.material"))?;
    let thickness = thickness(field(obj, path, "thickness_m")?, &format!("{path}.thickness_m"))?;
    Ok(Layer { material, thickness })
}

fn layers(v: &Value, path: &str) -> Result<Vec<Layer>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::parse(path, "expected an array of layers"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| layer(item, &format!("{path}[{i}]")))
        .collect()
}

/// Stack-level rules reported against the offending layer.
fn check_stack(layers: &[Layer], path: &str) -> Result<()> {
    if layers.len() < 2 {
        return Err(Error::parse(path, "a stack needs at least two layers"));
    }
    let last = layers.len() - 1;
    for (i, l) in layers.iter().enumerate() {
        if l.is_opaque() {
            continue;
        }
        let outer = i == 0 || i == last;
        match l.thickness {
            Thickness::Finite(_) if outer => {
                return Err(Error::parse(
                    format!("{path}[{i}].thickness_m"),
                    "outermost layer must be semi_infinite or a perfect conductor",
                ))
            }
            Thickness::SemiInfinite if !outer => {
                return Err(Error::parse(
                    format!("{path}[{i}].thickness_m"),
                    "interior layer cannot be semi_infinite",
                ))
            }
            _ => {}
        }
    }
    Ok(())
}

pub fn parse_stack(text: &str) -> Result<Stack> {
    let root = parse_json(text)?;
    let obj = object(&root, "$")?;
    reject_unknown(obj, "$", &["layers"])?;
    let layers = layers(field(obj, "$", "layers")?, "layers")?;
    check_stack(&layers, "layers")?;
    Stack::new(layers)
}

fn material_json(m: &MaterialModel) -> Value {
    match *m {
        MaterialModel::Vacuum => json!("vacuum"),
        MaterialModel::PerfectConductor => json!("perfect_conductor"),
        MaterialModel::Constant { epsilon } => json!({"model": "constant", "epsilon": epsilon}),
        MaterialModel::Drude { omega_p, gamma } => {
            json!({"model": "drude", "omega_p": omega_p, "gamma": gamma})
        }
        MaterialModel::Lorentz {
            omega_0,
            omega_p,
            gamma,
        } => json!({"model": "lorentz", "omega_0": omega_0, "omega_p": omega_p, "gamma": gamma}),
    }
}

fn layer_json(l: &Layer) -> Value {
    let thickness = match l.thickness {
        Thickness::Finite(d) => json!(d),
        Thickness::SemiInfinite => json!(SEMI_INFINITE),
    };
    json!({"material": material_json(&l.material), "thickness_m": thickness})
}

pub fn stack_to_json(stack: &Stack) -> String {
    let layers: Vec<Value> = stack.layers().iter().map(layer_json).collect();
    serde_json::to_string_pretty(&json!({ "layers": layers })).expect("JSON values serialize")
}

fn mirror(v: &Value, path: &str) -> Result<Mirror> {
    match v {
        Value::String(s) if s == "perfect_conductor" => Ok(Mirror::PerfectConductor),
        Value::Array(_) => Ok(Mirror::Stack(layers(v, path)?)),
        _ => Err(Error::parse(
            path,
            "expected \"perfect_conductor\" or an array of layers",
        )),
    }
}

fn positive_length(v: &Value, path: &str) -> Result<f64> {
    let d = number(v, path)?;
    if d > 0.0 && d.is_finite() {
        Ok(d)
    } else {
        Err(Error::parse(path, format!("length must be positive, got {d}")))
    }
}

pub fn parse_cavity(text: &str) -> Result<CavityConfig> {
    let root = parse_json(text)?;
    let obj = object(&root, "$")?;
    reject_unknown(
        obj,
        "$",
        &["medium", "slab", "d1_m", "d2_m", "left_mirror", "right_mirror"],
    )?;
    let slab_obj = object(field(obj, "$", "slab")?, "slab")?;
    reject_unknown(slab_obj, "slab", &["material", "thickness_m"])?;
    let config = CavityConfig {
        medium: material(field(obj, "$", "medium")?, "medium")?,
        slab: Slab {
            material: material(field(slab_obj, "slab", "material")?, "slab.material")?,
            thickness: positive_length(field(slab_obj, "slab", "thickness_m")?, "slab.thickness_m")?,
        },
        d1: positive_length(field(obj, "$", "d1_m")?, "d1_m")?,
        d2: positive_length(field(obj, "$", "d2_m")?, "d2_m")?,
        left_mirror: mirror(field(obj, "$", "left_mirror")?, "left_mirror")?,
        right_mirror: mirror(field(obj, "$", "right_mirror")?, "right_mirror")?,
    };
    config.validate()?;
    Ok(config)
}

pub fn cavity_to_json(config: &CavityConfig) -> String {
    let mirror = |m: &Mirror| match m {
        Mirror::PerfectConductor => json!("perfect_conductor"),
        Mirror::Stack(layers) => Value::Array(layers.iter().map(layer_json).collect()),
    };
    let v = json!({
        "medium": material_json(&config.medium),
        "slab": {
            "material": material_json(&config.slab.material),
            "thickness_m": config.slab.thickness,
        },
        "d1_m": config.d1,
        "d2_m": config.d2,
        "left_mirror": mirror(&config.left_mirror),
        "right_mirror": mirror(&config.right_mirror),
    });
    serde_json::to_string_pretty(&v).expect("JSON values serialize")
}
