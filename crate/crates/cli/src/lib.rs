//! Rendering helpers for the command-line tool.

pub mod render;

pub use render::{default_path, render_graph, render_path_table, render_zha, RenderConfig, TableStyle};
