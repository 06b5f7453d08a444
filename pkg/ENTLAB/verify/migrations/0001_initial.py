# Generated by Django 5.2.5 on 2026-10-19 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SweepRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('family', models.CharField(db_index=True, max_length=20)),
                ('spec', models.JSONField()),
                ('points', models.PositiveIntegerField()),
                ('min_margin', models.FloatField()),
                ('argmin', models.JSONField()),
                ('violations', models.JSONField(default=list)),
                ('passed', models.BooleanField(default=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'db_table': 'verify_sweep_run',
                'ordering': ('-created_at', '-id'),
            },
        ),
    ]
