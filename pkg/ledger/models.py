from django.db import models

# One action per subcommand group.
ACTION_TYPES = (
    ('SEARCH_RUN', 'Avoidance Search Run'),
    ('BOUNDS_RUN', 'Bounds Computed'),
    ('DENSITY_RUN', 'Density Computed'),
    ('SERIES_RUN', 'Series Enclosure Computed'),
    ('DEBRUIJN_RUN', 'de Bruijn Run'),
    ('VERIFY_RUN', 'Word File Verified'),
    ('TABLES_RUN', 'Tables Reproduced'),
)


class RunLog(models.Model):
    """
    Records one command-line run: its subcommand group, parameters and outcome.
    """
    action_type = models.CharField(max_length=50, choices=ACTION_TYPES)

    timestamp = models.DateTimeField(auto_now_add=True)

    # Parameters, exit code and a short summary of the result.
    details = models.JSONField(default=dict)

    class Meta:
        ordering = ['-timestamp']

    def __str__(self):
        return f'{self.action_type} at {self.timestamp.strftime("%Y-%m-%d %H:%M")}'
