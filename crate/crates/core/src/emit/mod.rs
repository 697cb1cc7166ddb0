//! File outputs: JSON-lines histories, CSV tables and SVG figures.

mod history;
mod svg;
mod table;

pub use history::{read_history, read_history_from, write_history, write_history_to, FORMAT_VERSION};
pub use svg::{
    colour_map, render_history_figure, render_history_rows, render_hv_figure, FigureOptions,
};
pub use table::{
    embedding_rows, read_embedding, read_embedding_from, read_hv_trace, read_hv_trace_from,
    write_embedding, write_embedding_rows_to, write_hv_trace, write_hv_trace_to, EmbeddingRow,
    EMBEDDING_HEADER, HV_HEADER,
};

/// Scientific notation with 17 significant digits; parses back exactly.
pub(crate) fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}
