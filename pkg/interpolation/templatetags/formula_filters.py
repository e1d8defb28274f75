from django import template

from syntax.formulas import render

register = template.Library()


@register.filter
def formula(value):
    if value is None:
        return ''
    return render(value)


@register.filter
def verdict(value):
    return 'ok' if value else 'violated'
