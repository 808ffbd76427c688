pub mod reference_tables;
