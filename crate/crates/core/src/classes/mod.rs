pub mod artin_schreier;
pub mod kummer;
