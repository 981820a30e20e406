use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps};

/// Real scalar backing every complex matrix in the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssignOps + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion used for small integer constants and tolerances.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to every Real")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
