"""
@file tests/admin/test_campaign_admin.py
@brief Tests for the Django admin configuration of the 'montecarlo' app.

@details
Campaigns are browsed read-only; the estimate column is colour-coded by
whether the confidence interval excludes zero.
"""

import pytest
from django.contrib.admin.sites import site
from django.urls import reverse

from montecarlo.admin import CampaignRecordAdmin
from montecarlo.models import CampaignRecord
from tests.factories import CampaignRecordFactory

pytestmark = pytest.mark.django_db


def test_campaign_admin_registered():
    """
    @brief CampaignRecord model is registered with admin site.
    """
    assert site.is_registered(CampaignRecord)


def test_campaign_admin_list_view(client, admin_user):
    """
    @brief Admin list view shows the estimate with its interval.
    """
    CampaignRecordFactory(master_seed=20240601)
    client.force_login(admin_user)
    response = client.get(reverse("admin:montecarlo_campaignrecord_changelist"))
    assert response.status_code == 200
    assert b"0.078 [0.058, 0.105]" in response.content


def test_colored_estimate():
    admin = CampaignRecordAdmin(CampaignRecord, site)
    assert "color: green" in admin.colored_p_hat(CampaignRecordFactory())
    assert "color: gray" in admin.colored_p_hat(CampaignRecordFactory(n_blowup=0, ci_low=0.0))


def test_no_add_permission(rf, admin_user):
    request = rf.get("/")
    request.user = admin_user
    assert not CampaignRecordAdmin(CampaignRecord, site).has_add_permission(request)


def test_filter_by_boundary(client, admin_user):
    CampaignRecordFactory(boundary="dirichlet", master_seed=7)
    CampaignRecordFactory(boundary="periodic", master_seed=8)
    client.force_login(admin_user)
    url = reverse("admin:montecarlo_campaignrecord_changelist")
    response = client.get(url, {"boundary__exact": "dirichlet"})
    assert response.status_code == 200
    assert response.context["cl"].result_count == 1
