//! Conversions between the laboratory units used at the I/O boundary
//! (pm, cm⁻³, gauss, cm³·G) and SI.

/// Metres per picometre.
pub const PM: f64 = 1e-12;
/// m⁻³ per cm⁻³.
pub const PER_CM3: f64 = 1e6;
/// Tesla per gauss.
pub const GAUSS: f64 = 1e-4;
/// m³·T per cm³·G: 1e-6 m³/cm³ × 1e-4 T/G.
pub const CM3_GAUSS: f64 = 1e-10;
