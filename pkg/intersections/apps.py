from django.apps import AppConfig


class IntersectionsConfig(AppConfig):
    name = 'intersections'
    verbose_name = 'Intersecciones completas'
