"""
@file montecarlo/admin.py
@brief Django admin configuration for stored campaigns.

@details
Read-only browsing of CampaignRecord rows with the blow-up estimate
colour-coded by whether its confidence interval excludes zero.
"""

from django.contrib import admin
from django.utils.html import format_html

from .models import CampaignRecord


@admin.register(CampaignRecord)
class CampaignRecordAdmin(admin.ModelAdmin):
    """
    @brief Admin list of campaigns, filterable by boundary mode.
    """
    list_display = ("master_seed", "boundary", "n_paths", "n_blowup", "colored_p_hat", "T_bound", "created_at")
    list_filter = ("boundary",)
    search_fields = ("spec_hash", "master_seed")
    readonly_fields = [f.name for f in CampaignRecord._meta.fields]

    @admin.display(description="p̂ [95% CI]", ordering="p_hat")
    def colored_p_hat(self, obj):
        """
        @brief p_hat with its interval, green when ci_low > 0 and gray otherwise.

        @param obj CampaignRecord instance.
        @return str HTML fragment.
        """
        color = "green" if obj.positive else "gray"
        return format_html(
            '<span style="color: {};">{} [{}, {}]</span>',
            color, f"{obj.p_hat:.3f}", f"{obj.ci_low:.3f}", f"{obj.ci_high:.3f}",
        )

    def has_add_permission(self, request):
        return False
