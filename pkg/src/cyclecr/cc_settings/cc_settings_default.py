#!/usr/bin/env python3

# > Numeric policy
DEFAULT_EPS = 1e-9

# > Viewport used when a figure does not bring its own: (xmin, xmax, ymin, ymax)
DEFAULT_VIEWPORT = [-4.0, 4.0, -4.0, 4.0]

available_output_formats = ("csv", "json")
settings_default = {
    "Numeric/eps-abs": DEFAULT_EPS,
    "Numeric/eps-rel": DEFAULT_EPS,
    "Random/seed": 0,
    "Verify/trials": 200,
    "Verify/output-format": available_output_formats[0],
    "Figure/max-retries": 16,
    "Render/viewport": DEFAULT_VIEWPORT,
    "Render/stroke-width": 0.02,
    "Render/dashed-imaginary": True,
    "Render/point-radius-px": 3,
    "Render/width-px": 600,
}
