#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
نقطة الدخول الرئيسية للمختبر
Main entry point for the plate decay lab

استخدام:
    python lab.py roots --constants
    python lab.py verify --n 3 --l 2 --data gaussian:a=1
    python lab.py oracle --lemma 4.6 --t 5
    python lab.py report --n 10
"""

import sys
import os

# إضافة المسار الحالي للـ imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cli import main


if __name__ == "__main__":
    sys.exit(main())
