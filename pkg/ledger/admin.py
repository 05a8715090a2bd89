from django.contrib import admin

from .models import RunLog


@admin.register(RunLog)
class RunLogAdmin(admin.ModelAdmin):
    list_display = ('action_type', 'timestamp')
    list_filter = ('action_type',)
    readonly_fields = ('action_type', 'timestamp', 'details')
