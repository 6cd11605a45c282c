//! File formats: HSC1 cubes, graymaps, label maps and run reports.

mod cube;
mod pnm;
mod report;

pub use cube::{decode_cube, encode_cube, is_cube_file, read_cube, write_cube, SampleType};
pub use pnm::{
    decode_graymap, decode_labels, encode_labels, label_format, read_graymap, read_graymap_stack,
    read_labels, write_labels, Graymap, LabelFormat, PGM_LABEL_LIMIT,
};
pub use report::{append_sweep_row, write_report, Algorithm, SegmentationReport, CSV_HEADER};
