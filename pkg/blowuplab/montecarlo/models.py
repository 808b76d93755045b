"""
@file montecarlo/models.py
@brief Stored campaign summaries.

@details
One CampaignRecord per recorded campaign. The headline numbers are columns so
the admin can sort and filter on them; the full McSummary is kept as JSON.
"""

from django.db import models

from core.artifacts import jsonable


class CampaignRecord(models.Model):
    """
    @brief A finished Monte Carlo campaign.
    """
    PERIODIC = "periodic"
    DIRICHLET = "dirichlet"

    BOUNDARY_CHOICES = [
        (PERIODIC, "Periodic"),
        (DIRICHLET, "Dirichlet"),
    ]

    master_seed = models.DecimalField(max_digits=20, decimal_places=0)
    spec_hash = models.CharField(max_length=64, db_index=True)
    boundary = models.CharField(max_length=10, choices=BOUNDARY_CHOICES, default=PERIODIC)
    n_paths = models.PositiveIntegerField()
    n_blowup = models.PositiveIntegerField()
    p_hat = models.FloatField()
    ci_low = models.FloatField()
    ci_high = models.FloatField()
    T_bound = models.FloatField()
    delta = models.FloatField(default=0.0)
    summary = models.JSONField()
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ("-created_at",)
        verbose_name = "Campaign"
        verbose_name_plural = "Campaigns"

    def __str__(self):
        return f"run-{self.master_seed} ({self.n_blowup}/{self.n_paths} blow-ups)"

    @property
    def positive(self):
        """
        @brief True when the Wilson interval excludes zero.
        """
        return self.ci_low > 0

    @classmethod
    def from_summary(cls, summary):
        """
        @brief Creates and saves a row from an McSummary.
        """
        return cls.objects.create(
            master_seed=summary.master_seed,
            spec_hash=summary.spec_hash,
            boundary=summary.boundary,
            n_paths=summary.n_paths,
            n_blowup=summary.n_blowup,
            p_hat=summary.p_hat,
            ci_low=summary.ci_low,
            ci_high=summary.ci_high,
            T_bound=summary.T_bound,
            delta=summary.delta,
            summary=jsonable(summary.to_dict()),
        )
