"""
@file core/forms.py
@brief Validation of run configuration documents.

@details
A run configuration is one flat JSON document. RunConfigForm checks every
field against the preconditions of the module that consumes it before any
work starts, so bad input never produces partial output.
"""

from django import forms
from django.conf import settings

from core.descriptors import parse_descriptor
from core.exceptions import LabError
from spde.nonlinearity import REGISTRY

SEED_MAX = 2**64 - 1


class RunConfigForm(forms.Form):
    """
    @brief Form for one run configuration document.

    @details
    u0 and v0 hold initial-data descriptors: "sine_k A" (A sin(k pi x/J)),
    "constant A", or a list of samples tabulated on [0, J]. Because they go
    through a JSONField, the raw values must be passed JSON-encoded.
    """
    BOUNDARY_CHOICES = [
        ("periodic", "Periodic"),
        ("dirichlet", "Dirichlet"),
    ]

    J = forms.FloatField()
    c1 = forms.FloatField(required=False)
    c2 = forms.FloatField(required=False)
    kappa = forms.FloatField()
    r = forms.FloatField()
    f_choice = forms.ChoiceField(choices=[(name, name) for name in sorted(REGISTRY)], required=False)
    u0 = forms.JSONField()
    v0 = forms.JSONField()
    nx = forms.IntegerField(min_value=8, required=False)
    cfl = forms.FloatField(required=False)
    L = forms.FloatField(required=False)
    epsilon = forms.FloatField(required=False)
    n_paths = forms.IntegerField(min_value=30, required=False)
    delta = forms.FloatField(min_value=0.0, max_value=1.0 / 3.0, required=False)
    master_seed = forms.IntegerField(min_value=0, max_value=SEED_MAX, required=False)
    boundary = forms.ChoiceField(choices=BOUNDARY_CHOICES, required=False)
    output_dir = forms.CharField(max_length=4096, required=False)
    horizon = forms.FloatField(required=False)
    checkpoint_every = forms.IntegerField(min_value=1, required=False)
    workers = forms.IntegerField(min_value=1, required=False)

    DEFAULTS = {
        "c1": 0.0,
        "c2": 0.0,
        "f_choice": "power",
        "nx": 128,
        "cfl": 0.5,
        "L": 1e3,
        "epsilon": 0.5,
        "n_paths": 512,
        "delta": 0.0,
        "master_seed": 0,
        "boundary": "periodic",
        "horizon": None,
        "checkpoint_every": 1,
        "workers": None,
    }

    def _positive(self, name):
        value = self.cleaned_data.get(name)
        if value is not None and not value > 0:
            raise forms.ValidationError(f"{name} must be positive.")
        return value

    def clean_J(self):
        return self._positive("J")

    def clean_kappa(self):
        return self._positive("kappa")

    def clean_r(self):
        value = self.cleaned_data.get("r")
        if value is not None and not value > 1:
            raise forms.ValidationError("r must exceed 1.")
        return value

    def clean_cfl(self):
        value = self.cleaned_data.get("cfl")
        if value is not None and not 0 < value <= 1:
            raise forms.ValidationError("cfl must lie in (0, 1]; the explicit scheme is unstable beyond dt = dx.")
        return value

    def clean_L(self):
        return self._positive("L")

    def clean_epsilon(self):
        return self._positive("epsilon")

    def clean_horizon(self):
        return self._positive("horizon")

    def _descriptor(self, name):
        value = self.cleaned_data.get(name)
        try:
            parse_descriptor(value, 1.0)
        except LabError as exc:
            raise forms.ValidationError(str(exc)) from None
        return value

    def clean_u0(self):
        return self._descriptor("u0")

    def clean_v0(self):
        return self._descriptor("v0")

    def clean(self):
        """
        @brief Fills defaults for the optional fields left empty.
        """
        cleaned = super().clean()
        for name, default in self.DEFAULTS.items():
            if cleaned.get(name) in (None, "") and name not in self.errors:
                cleaned[name] = default
        if cleaned.get("output_dir") in (None, ""):
            cleaned["output_dir"] = settings.BLOWUPLAB["OUTPUT_DIR"]
        return cleaned
