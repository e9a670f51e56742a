"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from biorder import freeword as fw

letters = st.text(alphabet="aAbB", max_size=12)
words = letters.map(fw.reduce)
nontrivial = words.filter(bool)
