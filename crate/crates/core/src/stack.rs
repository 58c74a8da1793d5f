use crate::error::{Error, Result};
use crate::materials::MaterialModel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Thickness {
    Finite(f64),
    SemiInfinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub material: MaterialModel,
    pub thickness: Thickness,
}

impl Layer {
    pub fn finite(material: MaterialModel, thickness: f64) -> Self {
        Layer {
            material,
            thickness: Thickness::Finite(thickness),
        }
    }

    pub fn half_space(material: MaterialModel) -> Self {
        Layer {
            material,
            thickness: Thickness::SemiInfinite,
        }
    }

    /// An ideal mirror. Inside a stack it is opaque: its thickness is
    /// ignored and the Fresnel recursion terminates on it.
    pub fn mirror() -> Self {
        Layer::half_space(MaterialModel::PerfectConductor)
    }

    pub fn is_opaque(&self) -> bool {
        self.material.is_perfect_conductor()
    }
}

/// Planar multilayer, layers indexed `0..=n` along `+z`.
///
/// The outermost layers are semi-infinite (or perfect conductors); every
/// other layer is either finite or an opaque perfect conductor.
#[derive(Debug, Clone, PartialEq)]
pub struct Stack {
    layers: Vec<Layer>,
}

impl Stack {
    pub fn new(layers: Vec<Layer>) -> Result<Self> {
        if layers.len() < 2 {
            return Err(Error::InvalidStack(format!(
                "a stack needs at least two layers, got {}",
                layers.len()
            )));
        }
        let last = layers.len() - 1;
        for (i, layer) in layers.iter().enumerate() {
            layer.material.validate()?;
            if layer.is_opaque() {
                continue;
            }
            match layer.thickness {
                Thickness::SemiInfinite if i != 0 && i != last => {
                    return Err(Error::InvalidStack(format!(
                        "interior layer {i} cannot be semi-infinite"
                    )));
                }
                Thickness::Finite(_) if i == 0 || i == last => {
                    return Err(Error::InvalidStack(format!(
                        "outermost layer {i} must be semi-infinite or a perfect conductor"
                    )));
                }
                Thickness::Finite(d) if !(d > 0.0 && d.is_finite()) => {
                    return Err(Error::InvalidStack(format!(
                        "layer {i} has non-positive thickness {d}"
                    )));
                }
                _ => {}
            }
        }
        Ok(Stack { layers })
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Index of the last layer.
    pub fn n(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, j: usize) -> Result<&Layer> {
        self.layers.get(j).ok_or(Error::LayerIndexOutOfRange {
            index: j,
            len: self.layers.len(),
        })
    }

    /// Thickness of a finite, non-opaque layer.
    pub fn thickness(&self, j: usize) -> Result<f64> {
        let layer = self.layer(j)?;
        if layer.is_opaque() {
            return Err(Error::OpaqueLayer(j));
        }
        match layer.thickness {
            Thickness::Finite(d) => Ok(d),
            Thickness::SemiInfinite => Err(Error::SemiInfiniteLayer(j)),
        }
    }

    /// Checks that layer `j` can carry a stress tensor and returns its
    /// thickness.
    pub fn probe(&self, j: usize) -> Result<f64> {
        let d = self.thickness(j)?;
        if !self.layers[j].material.is_lossless() {
            return Err(Error::LossyProbeLayer(j));
        }
        Ok(d)
    }

    pub fn with_thickness(&self, j: usize, d: f64) -> Result<Stack> {
        self.thickness(j)?;
        let mut layers = self.layers.clone();
        layers[j].thickness = Thickness::Finite(d);
        Stack::new(layers)
    }

    pub fn with_inserted(&self, index: usize, layer: Layer) -> Result<Stack> {
        if index == 0 || index > self.n() {
            return Err(Error::LayerIndexOutOfRange {
                index,
                len: self.layers.len(),
            });
        }
        let mut layers = self.layers.clone();
        layers.insert(index, layer);
        Stack::new(layers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vac(d: f64) -> Layer {
        Layer::finite(MaterialModel::Vacuum, d)
    }

    #[test]
    fn accepts_basic_geometries() {
        let two = Stack::new(vec![
            Layer::half_space(MaterialModel::Vacuum),
            Layer::half_space(MaterialModel::Constant { epsilon: 2.0 }),
        ])
        .unwrap();
        assert_eq!(two.n(), 1);

        let cavity = Stack::new(vec![Layer::mirror(), vac(1e-6), Layer::mirror()]).unwrap();
        assert_eq!(cavity.probe(1).unwrap(), 1e-6);
        assert_eq!(cavity.thickness(0), Err(Error::OpaqueLayer(0)));
    }

    #[test]
    fn rejects_malformed_stacks() {
        assert!(Stack::new(vec![Layer::mirror()]).is_err());
        assert!(Stack::new(vec![vac(1e-6), Layer::mirror()]).is_err());
        assert!(Stack::new(vec![
            Layer::mirror(),
            Layer::half_space(MaterialModel::Vacuum),
            Layer::mirror()
        ])
        .is_err());
        assert!(Stack::new(vec![Layer::mirror(), vac(-1.0), Layer::mirror()]).is_err());
        assert!(Stack::new(vec![Layer::mirror(), vac(0.0), Layer::mirror()]).is_err());
    }

    #[test]
    fn interior_mirror_is_opaque() {
        let s = Stack::new(vec![
            Layer::mirror(),
            vac(1e-6),
            Layer::finite(MaterialModel::PerfectConductor, 1e-7),
            vac(2e-6),
            Layer::mirror(),
        ])
        .unwrap();
        assert_eq!(s.thickness(2), Err(Error::OpaqueLayer(2)));
    }

    #[test]
    fn probe_requires_lossless_finite_layer() {
        let s = Stack::new(vec![
            Layer::half_space(MaterialModel::Vacuum),
            Layer::finite(MaterialModel::Drude { omega_p: 1e16, gamma: 1e14 }, 1e-7),
            vac(1e-6),
            Layer::half_space(MaterialModel::Vacuum),
        ])
        .unwrap();
        assert_eq!(s.probe(1), Err(Error::LossyProbeLayer(1)));
        assert_eq!(s.probe(0), Err(Error::SemiInfiniteLayer(0)));
        assert!(matches!(s.probe(7), Err(Error::LayerIndexOutOfRange { .. })));
        assert_eq!(s.probe(2).unwrap(), 1e-6);
    }
}
