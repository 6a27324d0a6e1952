#![allow(dead_code)]

pub mod closed_forms;
