"""
Plate Decay Lab - مختبر تخامد معادلة الصفيحة
تحقق عددي من معدلات التخامد والمقاطع التقاربية لمعادلة الصفيحة المخمّدة مع عطالة دورانية
Numerical verification of decay rates and asymptotic profiles for the damped plate equation
"""

__version__ = "1.0.0"
__author__ = "Mang Team"
