#![allow(dead_code)]

pub mod brute;
pub mod expansion;
pub mod onepage;
pub mod templates;
