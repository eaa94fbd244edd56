//! File formats: images, depth maps, spectral tables, and visualizations.

pub mod depth;
pub mod grid;
pub mod image;
pub mod spectral;

pub use self::depth::{load_depth, read_pfm, write_pfm, Endianness};
pub use self::grid::{emit_term_grid, hstack, stretch, GUTTER};
pub use self::image::{
    decode_image_bytes, encode_png, load_image, quantize_u16, quantize_u8, save_gray16, save_image,
    save_image_with_depth, BitDepth,
};
