"""Customizable hub labeling: metric-independent labels, customization, queries."""
