from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="CampaignRecord",
            fields=[
                ("id", models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name="ID")),
                ("master_seed", models.DecimalField(decimal_places=0, max_digits=20)),
                ("spec_hash", models.CharField(db_index=True, max_length=64)),
                (
                    "boundary",
                    models.CharField(
                        choices=[("periodic", "Periodic"), ("dirichlet", "Dirichlet")],
                        default="periodic",
                        max_length=10,
                    ),
                ),
                ("n_paths", models.PositiveIntegerField()),
                ("n_blowup", models.PositiveIntegerField()),
                ("p_hat", models.FloatField()),
                ("ci_low", models.FloatField()),
                ("ci_high", models.FloatField()),
                ("T_bound", models.FloatField()),
                ("delta", models.FloatField(default=0.0)),
                ("summary", models.JSONField()),
                ("created_at", models.DateTimeField(auto_now_add=True)),
            ],
            options={
                "verbose_name": "Campaign",
                "verbose_name_plural": "Campaigns",
                "ordering": ("-created_at",),
            },
        ),
    ]
