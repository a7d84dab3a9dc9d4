"""Tests for Clinical Trials Knowledge Graph Pipeline."""


